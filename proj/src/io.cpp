#include "umcqa/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "umcqa/error.hpp"

namespace umcqa::io {

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_lines(const fs::path& path, const std::vector<json>& rows) {
  auto out = open_out(path);
  for (const auto& r : rows) out << r.dump() << '\n';
}

template <class Fn>
auto parse_rows(const fs::path& path, Fn&& fn) {
  std::vector<decltype(fn(json{}))> out;
  std::size_t line = 0;
  for (const auto& row : read_jsonl(path)) {
    ++line;
    try {
      out.push_back(fn(row));
    } catch (const json::exception& e) {
      throw Error(path.string() + " record " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

std::vector<json> read_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<json> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(path.string() + " line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

json to_json(const Example& ex) {
  return json{{"id", ex.id},
              {"passage_raw", ex.passage_raw},
              {"passage", ex.passage},
              {"question_raw", ex.question_raw},
              {"question", ex.question},
              {"choices_raw", ex.choices_raw},
              {"choices", ex.choices},
              {"gold", ex.gold ? json(*ex.gold) : json(nullptr)},
              {"subset", to_string(ex.subset)},
              {"qtype", to_string(ex.qtype)}};
}

Example example_from_json(const json& j) {
  Example ex;
  ex.id = j.at("id").get<std::string>();
  ex.passage_raw = j.at("passage_raw").get<std::string>();
  ex.passage = j.at("passage").get<TokenSeq>();
  ex.question_raw = j.at("question_raw").get<std::string>();
  ex.question = j.at("question").get<TokenSeq>();
  ex.choices_raw = j.at("choices_raw").get<std::vector<std::string>>();
  ex.choices = j.at("choices").get<std::vector<TokenSeq>>();
  if (j.contains("gold") && !j["gold"].is_null()) ex.gold = j["gold"].get<int>();
  ex.subset = parse_subset(j.at("subset").get<std::string>());
  ex.qtype = parse_question_type(j.at("qtype").get<std::string>());
  return ex;
}

void write_example_set(const fs::path& path, const ExampleSet& set) {
  std::vector<json> rows;
  rows.reserve(set.examples.size());
  for (const auto& ex : set.examples) {
    json j = to_json(ex);
    j["set"] = set.name;
    j["split"] = to_string(set.split);
    rows.push_back(std::move(j));
  }
  write_lines(path, rows);
}

ExampleSet read_example_set(const fs::path& path) {
  ExampleSet set;
  set.name = path.stem().string();
  const auto rows = read_jsonl(path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    try {
      if (i == 0) {
        if (rows[i].contains("set")) set.name = rows[i]["set"].get<std::string>();
        if (rows[i].contains("split")) set.split = parse_split(rows[i]["split"].get<std::string>());
      }
      set.examples.push_back(example_from_json(rows[i]));
    } catch (const json::exception& e) {
      throw Error(path.string() + " record " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  validate(set);
  return set;
}

EqaMap read_eqa_predictions(const fs::path& path) {
  EqaMap out;
  for (auto& p : parse_rows(path, [](const json& j) {
         EqaPrediction p;
         p.question_id = j.at("id").get<std::string>();
         p.span = j.at("span").get<std::string>();
         if (j.contains("confidence") && !j["confidence"].is_null()) {
           p.confidence = j["confidence"].get<double>();
         }
         return p;
       })) {
    std::string id = p.question_id;
    if (!out.emplace(id, std::move(p)).second) {
      throw Error(path.string() + ": duplicate prediction id " + id);
    }
  }
  return out;
}

void write_eqa_predictions(const fs::path& path, const std::vector<EqaPrediction>& preds) {
  std::vector<json> rows;
  for (const auto& p : preds) {
    json j{{"id", p.question_id}, {"span", p.span}};
    if (p.confidence) j["confidence"] = *p.confidence;
    rows.push_back(std::move(j));
  }
  write_lines(path, rows);
}

void write_choice_scores(const fs::path& path, const std::vector<ChoiceScores>& scores) {
  std::vector<json> rows;
  for (const auto& s : scores) {
    rows.push_back({{"id", s.example_id}, {"method", to_string(s.method)}, {"scores", s.scores}});
  }
  write_lines(path, rows);
}

std::vector<ChoiceScores> read_choice_scores(const fs::path& path) {
  return parse_rows(path, [](const json& j) {
    return ChoiceScores{j.at("id").get<std::string>(),
                        parse_match_method(j.at("method").get<std::string>()),
                        j.at("scores").get<std::vector<double>>()};
  });
}

void write_candidate_sets(const fs::path& path, const std::vector<CandidateSet>& sets) {
  std::vector<json> rows;
  for (const auto& s : sets) {
    json cands = json::array();
    for (const auto& c : s.entries) cands.push_back({{"choice", c.choice}, {"score", c.score}});
    rows.push_back({{"id", s.example_id}, {"candidates", std::move(cands)}});
  }
  write_lines(path, rows);
}

std::vector<CandidateSet> read_candidate_sets(const fs::path& path) {
  return parse_rows(path, [](const json& j) {
    CandidateSet s;
    s.example_id = j.at("id").get<std::string>();
    for (const auto& c : j.at("candidates")) {
      s.entries.push_back({c.at("choice").get<int>(), c.at("score").get<double>()});
    }
    return s;
  });
}

json to_json(const CandidateStats& stats) {
  return json{{"avg_size", stats.avg_size},
              {"pct_including_answer", stats.pct_including_answer},
              {"random_baseline", stats.random_baseline},
              {"num_sets", stats.num_sets}};
}

json to_json(const TrainingConfig& config) {
  json j{{"batch_size", config.batch_size},
         {"warmup_steps", config.warmup_steps},
         {"total_steps", config.total_steps},
         {"peak_lr", config.peak_lr},
         {"seed", config.seed},
         {"objective", to_string(config.objective)},
         {"anneal", config.anneal.has_value()}};
  if (config.anneal) j["tau"] = config.anneal->tau;
  return j;
}

void write_model(const fs::path& path, const LinearScorer& scorer, const TrainingConfig* config) {
  json j{{"weights", scorer.weights},
         {"bias", scorer.bias},
         {"feature_set_version", kFeatureSetVersion}};
  if (config != nullptr) j["config"] = to_json(*config);
  write_text(path, j.dump(2) + "\n");
}

LinearScorer read_model(const fs::path& path, json* config_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": malformed model file: " + e.what());
  }
  try {
    const int version = j.at("feature_set_version").get<int>();
    if (version != kFeatureSetVersion) {
      throw Error(path.string() + ": feature set version " + std::to_string(version) +
                  " does not match this build (" + std::to_string(kFeatureSetVersion) + ")");
    }
    const auto weights = j.at("weights").get<std::vector<double>>();
    if (weights.size() != kNumFeatures) {
      throw Error(path.string() + ": expected " + std::to_string(kNumFeatures) + " weights");
    }
    LinearScorer s;
    std::copy(weights.begin(), weights.end(), s.weights.begin());
    s.bias = j.at("bias").get<double>();
    if (config_out != nullptr) *config_out = j.value("config", json::object());
    return s;
  } catch (const json::exception& e) {
    throw Error(path.string() + ": malformed model file: " + e.what());
  }
}

void write_train_log(const fs::path& path, const TrainLog& log) {
  std::ostringstream out;
  out << "step,objective,loss,lr\n";
  for (const auto& r : log) {
    out << r.step << ',' << to_string(r.objective) << ',' << format_double(r.loss) << ','
        << format_double(r.lr) << '\n';
  }
  write_text(path, out.str());
}

namespace {

json groups_to_json(const auto& groups) {
  json j = json::object();
  for (const auto& [k, g] : groups) {
    j[std::string(to_string(k))] = {{"accuracy", g.accuracy}, {"count", g.count}};
  }
  return j;
}

}  // namespace

json to_json(const EvalReport& report) {
  json j{{"overall_accuracy", report.overall_accuracy},
         {"count", report.count},
         {"by_subset", groups_to_json(report.by_subset)},
         {"by_qtype", groups_to_json(report.by_qtype)},
         {"run_metadata", report.run_metadata}};
  if (report.candidate_stats) j["candidate_stats"] = to_json(*report.candidate_stats);
  if (report.method_comparison) {
    j["method_comparison"] = {{"a_only", report.method_comparison->a_only},
                              {"b_only", report.method_comparison->b_only}};
  }
  return j;
}

EvalReport report_from_json(const json& j) {
  EvalReport r;
  r.overall_accuracy = j.at("overall_accuracy").get<double>();
  r.count = j.at("count").get<std::size_t>();
  for (const auto& [k, v] : j.at("by_subset").items()) {
    r.by_subset[parse_subset(k)] = {v.at("accuracy").get<double>(), v.at("count").get<std::size_t>()};
  }
  for (const auto& [k, v] : j.at("by_qtype").items()) {
    r.by_qtype[parse_question_type(k)] = {v.at("accuracy").get<double>(),
                                          v.at("count").get<std::size_t>()};
  }
  r.run_metadata = j.value("run_metadata", std::map<std::string, std::string>{});
  if (j.contains("candidate_stats")) {
    const auto& s = j["candidate_stats"];
    r.candidate_stats = CandidateStats{s.at("avg_size").get<double>(),
                                       s.at("pct_including_answer").get<double>(),
                                       s.at("random_baseline").get<double>(),
                                       s.at("num_sets").get<std::size_t>()};
  }
  if (j.contains("method_comparison")) {
    const auto& m = j["method_comparison"];
    r.method_comparison = MethodComparison{m.at("a_only").get<std::size_t>(),
                                           m.at("b_only").get<std::size_t>()};
  }
  return r;
}

void write_report_json(const fs::path& path, const EvalReport& report) {
  write_text(path, to_json(report).dump(2) + "\n");
}

std::string report_csv(const EvalReport& report) {
  std::ostringstream out;
  char buf[32];
  auto row = [&](std::string_view grouping, std::string_view key, const GroupAccuracy& g) {
    std::snprintf(buf, sizeof buf, "%.1f", g.accuracy);
    out << grouping << ',' << key << ',' << buf << ',' << g.count << '\n';
  };
  out << "grouping,key,accuracy,count\n";
  row("overall", "all", {report.overall_accuracy, report.count});
  for (const auto& [k, g] : report.by_subset) row("subset", to_string(k), g);
  for (const auto& [k, g] : report.by_qtype) row("qtype", to_string(k), g);
  return out.str();
}

void write_report_csv(const fs::path& path, const EvalReport& report) {
  write_text(path, report_csv(report));
}

}  // namespace umcqa::io
