#include "umcqa/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "umcqa/candidates.hpp"
#include "umcqa/corpus.hpp"
#include "umcqa/error.hpp"
#include "umcqa/eval.hpp"
#include "umcqa/io.hpp"
#include "umcqa/matching.hpp"
#include "umcqa/scorer.hpp"

namespace umcqa::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct IngestArgs {
  std::string dataset;
  std::string split = "dev";
  std::string root;
  std::string stories;
  std::string answers;
  std::string out;
};

struct CandidatesArgs {
  std::string examples;
  std::string method = "sw";
  std::string eqa;
  std::string preset;
  std::optional<double> threshold;
  std::optional<int> top_k;
  std::string out_dir;
};

struct TrainArgs {
  std::string examples;
  std::string candidates;
  std::string eqa;
  std::string objective = "mml";
  std::string anneal;
  double tau = kDefaultTau;
  std::uint64_t seed = 0;
  std::optional<int> total_steps;
  int batch_size = 32;
  int warmup = 1000;
  double lr = 0.5;
  std::string out_dir;
};

struct EvalArgs {
  std::string examples;
  std::string model;
  std::string baseline;
  std::string eqa;
  std::string candidates;
  std::vector<std::string> compare;
  std::string method;
  std::optional<double> threshold;
  std::optional<int> top_k;
  std::string out_dir;
};

std::string fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void require_file(const std::string& path, std::string_view what) {
  if (path.empty()) throw UsageError(std::string(what) + " path is required");
  if (!fs::exists(path)) throw UsageError(std::string(what) + " not found: " + path);
}

int do_ingest(const IngestArgs& a, std::ostream& out) {
  const Split split = [&] {
    try {
      return parse_split(a.split);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  ExampleSet set;
  if (a.dataset == "race") {
    require_file(a.root, "RACE root");
    set = load_race(a.root, split);
  } else if (a.dataset == "mc500") {
    require_file(a.stories, "MCTest story file");
    require_file(a.answers, "MCTest answer file");
    set = load_mctest(a.stories, a.answers, split);
  } else {
    throw UsageError("--dataset must be race or mc500");
  }
  io::write_example_set(a.out, set);

  std::map<std::string, std::size_t> counts;
  for (const auto& ex : set.examples) ++counts[std::string(to_string(ex.subset))];
  json summary{{"dataset", a.dataset},
               {"split", to_string(split)},
               {"total", set.examples.size()},
               {"by_subset", counts}};
  fs::path summary_path = a.out;
  summary_path.replace_extension(".counts.json");
  io::write_text(summary_path, summary.dump(2) + "\n");

  out << a.dataset << ' ' << to_string(split) << ": " << set.examples.size() << " examples\n";
  for (const auto& [subset, n] : counts) out << "  " << subset << ' ' << n << '\n';
  return kExitOk;
}

int do_candidates(const CandidatesArgs& a, std::ostream& out) {
  require_file(a.examples, "examples");
  const MatchMethod method = parse_match_method(a.method);
  if (method == MatchMethod::EQA && a.eqa.empty()) {
    throw UsageError("--eqa predictions file is required with --method eqa");
  }
  SelectionConfig config;
  if (!a.preset.empty()) {
    config = preset_config(parse_preset(a.preset));
  } else if (!a.threshold || !a.top_k) {
    throw UsageError("give --preset or both --threshold and --top-k");
  }
  if (a.threshold) config.threshold = *a.threshold;
  if (a.top_k) config.max_candidates = *a.top_k;

  const ExampleSet set = io::read_example_set(a.examples);
  for (const auto& ex : set.examples) validate_selection(config, ex.num_choices());
  EqaMap eqa;
  if (method == MatchMethod::EQA) {
    require_file(a.eqa, "EQA predictions");
    eqa = io::read_eqa_predictions(a.eqa);
  }

  std::vector<ChoiceScores> scores;
  std::vector<CandidateSet> sets;
  scores.reserve(set.examples.size());
  sets.reserve(set.examples.size());
  for (const auto& ex : set.examples) {
    const EqaPrediction* pred = nullptr;
    if (method == MatchMethod::EQA) {
      auto it = eqa.find(ex.id);
      if (it == eqa.end()) throw Error("no EQA prediction for example " + ex.id);
      pred = &it->second;
    }
    scores.push_back(score_choices(ex, method, pred));
    sets.push_back(select_candidates(scores.back(), config));
  }

  const fs::path dir = a.out_dir;
  io::write_choice_scores(dir / "scores.jsonl", scores);
  io::write_candidate_sets(dir / "candidates.jsonl", sets);

  json stats_json{{"method", a.method},
                  {"threshold", config.threshold},
                  {"top_k", config.max_candidates}};
  const GoldMap gold = gold_map(set);
  out << "method=" << a.method << " threshold=" << io::format_double(config.threshold)
      << " top_k=" << config.max_candidates << " examples=" << sets.size() << '\n';
  if (gold.size() == set.examples.size()) {
    const CandidateStats stats = candidate_stats(sets, gold);
    stats_json["stats"] = io::to_json(stats);
    out << "(A) avg candidates " << fixed2(stats.avg_size) << '\n'
        << "(B) percent including answer " << fixed1(stats.pct_including_answer) << '\n'
        << "(B)/(A) " << fixed1(stats.random_baseline) << '\n';
  }
  io::write_text(dir / "stats.json", stats_json.dump(2) + "\n");
  return kExitOk;
}

int do_train(const TrainArgs& a, std::ostream& out) {
  require_file(a.examples, "examples");
  require_file(a.candidates, "candidates");
  if (!a.total_steps) throw UsageError("--total-steps is required");

  TrainingConfig config;
  config.objective = parse_objective(a.objective);
  config.total_steps = *a.total_steps;
  config.warmup_steps = a.warmup;
  config.batch_size = a.batch_size;
  config.peak_lr = a.lr;
  config.seed = a.seed;
  const bool hard_em = config.objective == ObjectiveKind::HardEM;
  const std::string anneal = a.anneal.empty() ? (hard_em ? "on" : "off") : a.anneal;
  if (anneal == "on") {
    if (!hard_em) throw UsageError("--anneal on requires --objective hard-em");
    config.anneal = AnnealSchedule{a.tau, 0.8};
  } else if (anneal != "off") {
    throw UsageError("--anneal must be on or off");
  }
  validate(config);

  const ExampleSet set = io::read_example_set(a.examples);
  const auto cands = io::read_candidate_sets(a.candidates);
  EqaMap eqa;
  if (!a.eqa.empty()) {
    require_file(a.eqa, "EQA predictions");
    eqa = io::read_eqa_predictions(a.eqa);
  }
  const auto unlabeled = strip_gold(set.examples);
  const TrainResult result = train(std::span<const UnlabeledExample>(unlabeled), cands,
                                   a.eqa.empty() ? nullptr : &eqa, config);

  const fs::path dir = a.out_dir;
  io::write_model(dir / "model.json", result.scorer, &config);
  io::write_train_log(dir / "train_log.csv", result.log);
  out << "trained " << config.total_steps << " steps, objective=" << to_string(config.objective)
      << (config.anneal ? " (annealed)" : "");
  if (!result.log.empty()) out << ", final loss " << io::format_double(result.log.back().loss);
  out << '\n';
  return kExitOk;
}

int do_eval(const EvalArgs& a, std::ostream& out) {
  require_file(a.examples, "examples");
  if (a.model.empty() == a.baseline.empty()) throw UsageError("give exactly one of --model or --baseline");
  const ExampleSet set = io::read_example_set(a.examples);
  const GoldMap gold = gold_map(set);
  if (gold.size() != set.examples.size()) throw Error("evaluation needs gold labels for every example");

  EqaMap eqa;
  if (!a.eqa.empty()) {
    require_file(a.eqa, "EQA predictions");
    eqa = io::read_eqa_predictions(a.eqa);
  }
  auto find_eqa = [&](const std::string& id) -> const EqaPrediction* {
    auto it = eqa.find(id);
    return it == eqa.end() ? nullptr : &it->second;
  };

  EvalReport report;
  PredictionMap predictions;
  std::map<std::string, std::string> meta;
  if (!a.model.empty()) {
    require_file(a.model, "model");
    json config;
    const LinearScorer scorer = io::read_model(a.model, &config);
    for (const auto& ex : set.examples) predictions[ex.id] = predict(scorer, ex, find_eqa(ex.id));
    for (const auto& [k, v] : config.items()) meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
    meta["model"] = a.model;
  } else {
    const MatchMethod method = parse_match_method(a.baseline);
    for (const auto& ex : set.examples) {
      const EqaPrediction* pred = find_eqa(ex.id);
      if (method == MatchMethod::EQA && pred == nullptr) throw Error("no EQA prediction for example " + ex.id);
      predictions[ex.id] = baseline_predict(score_choices(ex, method, pred));
    }
    meta["baseline"] = a.baseline;
  }
  if (!a.method.empty()) meta["method"] = a.method;
  if (a.threshold) meta["threshold"] = io::format_double(*a.threshold);
  if (a.top_k) meta["top_k"] = std::to_string(*a.top_k);

  std::optional<CandidateStats> stats;
  if (!a.candidates.empty()) {
    require_file(a.candidates, "candidates");
    stats = candidate_stats(io::read_candidate_sets(a.candidates), gold);
  }
  std::optional<MethodComparison> comparison;
  if (!a.compare.empty()) {
    if (a.compare.size() != 2) throw UsageError("--compare takes exactly two candidate files");
    require_file(a.compare[0], "candidates");
    require_file(a.compare[1], "candidates");
    comparison = compare_candidate_methods(io::read_candidate_sets(a.compare[0]),
                                           io::read_candidate_sets(a.compare[1]), gold);
  }
  report = breakdown_report(predictions, gold, set, stats, comparison);
  report.run_metadata = std::move(meta);

  const fs::path dir = a.out_dir;
  io::write_report_json(dir / "report.json", report);
  io::write_report_csv(dir / "report.csv", report);

  out << "accuracy " << fixed1(report.overall_accuracy) << " (" << report.count << ")\n";
  for (const auto& [k, g] : report.by_subset) {
    out << "  " << to_string(k) << ' ' << fixed1(g.accuracy) << " (" << g.count << ")\n";
  }
  for (const auto& [k, g] : report.by_qtype) {
    out << "  " << to_string(k) << ' ' << fixed1(g.accuracy) << " (" << g.count << ")\n";
  }
  if (stats) {
    out << "candidates A=" << fixed2(stats->avg_size) << " B=" << fixed1(stats->pct_including_answer)
        << " B/A=" << fixed1(stats->random_baseline) << '\n';
  }
  if (comparison) out << "a_only=" << comparison->a_only << " b_only=" << comparison->b_only << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unsupervised multiple-choice QA: candidate generation, weak-supervision training, evaluation",
               "umcqa"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Load RACE or MC500 files into interchange JSONL");
  ingest_cmd->add_option("--dataset", ingest.dataset, "race | mc500")->required();
  ingest_cmd->add_option("--split", ingest.split, "train | dev | test");
  ingest_cmd->add_option("--root", ingest.root, "RACE root directory");
  ingest_cmd->add_option("--stories", ingest.stories, "MCTest story .tsv");
  ingest_cmd->add_option("--answers", ingest.answers, "MCTest answer .ans");
  ingest_cmd->add_option("--out", ingest.out, "output JSONL")->required();

  CandidatesArgs cand;
  auto* cand_cmd = app.add_subcommand("candidates", "Score choices and select candidate sets");
  cand_cmd->add_option("--examples", cand.examples)->required();
  cand_cmd->add_option("--method", cand.method, "sw | eqa");
  cand_cmd->add_option("--eqa", cand.eqa, "EQA predictions JSONL");
  cand_cmd->add_option("--preset", cand.preset, "race-sw | race-eqa | mc500-sw | mc500-eqa");
  cand_cmd->add_option("--threshold", cand.threshold);
  cand_cmd->add_option("--top-k", cand.top_k);
  cand_cmd->add_option("--out-dir", cand.out_dir)->required();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train the scorer on candidate sets");
  train_cmd->add_option("--examples", tr.examples)->required();
  train_cmd->add_option("--candidates", tr.candidates)->required();
  train_cmd->add_option("--eqa", tr.eqa, "EQA predictions JSONL (feature input)");
  train_cmd->add_option("--objective", tr.objective, "highest | mml | hard-em");
  train_cmd->add_option("--anneal", tr.anneal, "on | off (default: on for hard-em)");
  train_cmd->add_option("--tau", tr.tau);
  train_cmd->add_option("--seed", tr.seed);
  train_cmd->add_option("--total-steps", tr.total_steps);
  train_cmd->add_option("--batch-size", tr.batch_size);
  train_cmd->add_option("--warmup", tr.warmup);
  train_cmd->add_option("--lr", tr.lr, "peak learning rate");
  train_cmd->add_option("--out-dir", tr.out_dir)->required();

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model or baseline and write reports");
  eval_cmd->add_option("--examples", ev.examples)->required();
  eval_cmd->add_option("--model", ev.model);
  eval_cmd->add_option("--baseline", ev.baseline, "sw | eqa");
  eval_cmd->add_option("--eqa", ev.eqa);
  eval_cmd->add_option("--candidates", ev.candidates, "candidate sets to summarize");
  eval_cmd->add_option("--compare", ev.compare, "two candidate files A B")->expected(2);
  eval_cmd->add_option("--method", ev.method);
  eval_cmd->add_option("--threshold", ev.threshold);
  eval_cmd->add_option("--top-k", ev.top_k);
  eval_cmd->add_option("--out-dir", ev.out_dir)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*ingest_cmd) return do_ingest(ingest, out);
    if (*cand_cmd) return do_candidates(cand, out);
    if (*train_cmd) return do_train(tr, out);
    if (*eval_cmd) return do_eval(ev, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace umcqa::cli
