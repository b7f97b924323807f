#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "umcqa/candidates.hpp"
#include "umcqa/corpus.hpp"
#include "umcqa/error.hpp"
#include "umcqa/eval.hpp"
#include "umcqa/io.hpp"
#include "umcqa/matching.hpp"
#include "umcqa/objectives.hpp"
#include "umcqa/scorer.hpp"

namespace py = pybind11;
using namespace umcqa;

namespace {

CandidateSet make_set(std::string id, const std::vector<std::pair<int, double>>& entries) {
  CandidateSet s;
  s.example_id = std::move(id);
  for (auto [c, score] : entries) s.entries.push_back({c, score});
  return s;
}

// Candidate list given as choice indices, best first.
CandidateSet set_from_indices(const std::vector<int>& choices) {
  CandidateSet s;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    s.entries.push_back({choices[i], static_cast<double>(choices.size() - i)});
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Unsupervised multiple-choice QA core";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<Example>(m, "Example")
      .def_readonly("id", &Example::id)
      .def_readonly("passage_raw", &Example::passage_raw)
      .def_readonly("passage", &Example::passage)
      .def_readonly("question_raw", &Example::question_raw)
      .def_readonly("question", &Example::question)
      .def_readonly("choices_raw", &Example::choices_raw)
      .def_readonly("choices", &Example::choices)
      .def_readonly("gold", &Example::gold)
      .def_property_readonly("subset", [](const Example& e) { return std::string(to_string(e.subset)); })
      .def_property_readonly("qtype", [](const Example& e) { return std::string(to_string(e.qtype)); })
      .def("__repr__", [](const Example& e) { return "<Example " + e.id + ">"; });

  py::class_<ExampleSet>(m, "ExampleSet")
      .def_readonly("name", &ExampleSet::name)
      .def_readonly("examples", &ExampleSet::examples)
      .def_property_readonly("split", [](const ExampleSet& s) { return std::string(to_string(s.split)); })
      .def("__len__", [](const ExampleSet& s) { return s.examples.size(); });

  m.def("make_example",
        [](std::string id, std::string passage, std::string question,
           std::vector<std::string> choices, std::optional<int> gold) {
          return make_example(std::move(id), std::move(passage), std::move(question),
                              std::move(choices), gold, Subset::Other);
        },
        py::arg("id"), py::arg("passage"), py::arg("question"), py::arg("choices"),
        py::arg("gold") = py::none());
  m.def("tokenize", &tokenize, py::arg("text"));
  m.def("classify_question_type",
        [](std::string_view q) { return std::string(to_string(classify_question_type(q))); });
  m.def("load_race",
        [](const std::string& root, const std::string& split) { return load_race(root, parse_split(split)); },
        py::arg("root"), py::arg("split"));
  m.def("load_mctest",
        [](const std::string& stories, const std::string& answers, const std::string& split) {
          return load_mctest(stories, answers, parse_split(split));
        },
        py::arg("stories"), py::arg("answers"), py::arg("split") = "dev");
  m.def("read_example_set", [](const std::string& p) { return io::read_example_set(p); });
  m.def("write_example_set", [](const std::string& p, const ExampleSet& s) { io::write_example_set(p, s); });

  m.def("inverse_count", &inverse_count, py::arg("count"));
  m.def("sliding_window_score",
        [](const TokenSeq& passage, const TokenSeq& question, const TokenSeq& choice) {
          return sliding_window_score(passage, question, choice, InverseCountTable(passage));
        },
        py::arg("passage"), py::arg("question"), py::arg("choice"));
  m.def("gestalt_similarity", &gestalt_similarity, py::arg("a"), py::arg("b"));
  m.def("eqa_match_score",
        [](const std::string& span, std::string_view choice) {
          return eqa_match_score(EqaPrediction{"", span, std::nullopt}, choice);
        },
        py::arg("span"), py::arg("choice"));
  m.def("score_choices",
        [](const Example& ex, const std::string& method, std::optional<std::string> span) {
          const MatchMethod mm = parse_match_method(method);
          std::optional<EqaPrediction> pred;
          if (span) pred = EqaPrediction{ex.id, *span, std::nullopt};
          return score_choices(ex, mm, pred ? &*pred : nullptr).scores;
        },
        py::arg("example"), py::arg("method") = "sw", py::arg("span") = py::none());

  m.def("select_candidates",
        [](const std::vector<double>& scores, double threshold, int k) {
          const auto set = select_candidates(ChoiceScores{"", MatchMethod::SW, scores}, {threshold, k});
          std::vector<std::pair<int, double>> out;
          for (const auto& c : set.entries) out.emplace_back(c.choice, c.score);
          return out;
        },
        py::arg("scores"), py::arg("threshold"), py::arg("k"));
  m.def("preset", [](const std::string& name) {
    const auto c = preset_config(parse_preset(name));
    return std::make_pair(c.threshold, c.max_candidates);
  });
  m.def("candidate_stats",
        [](const std::map<std::string, std::vector<std::pair<int, double>>>& sets,
           const std::map<std::string, int>& gold) {
          std::vector<CandidateSet> v;
          for (const auto& [id, e] : sets) v.push_back(make_set(id, e));
          const auto s = candidate_stats(v, GoldMap(gold.begin(), gold.end()));
          return py::dict(py::arg("avg_size") = s.avg_size,
                          py::arg("pct_including_answer") = s.pct_including_answer,
                          py::arg("random_baseline") = s.random_baseline);
        },
        py::arg("sets"), py::arg("gold"));
  m.def("baseline_predict",
        [](const std::vector<double>& scores) {
          return baseline_predict(ChoiceScores{"", MatchMethod::SW, scores});
        },
        py::arg("scores"));

  m.def("softmax", [](const std::vector<double>& z) { return softmax(z); });
  m.def("loss",
        [](const std::vector<double>& probs, const std::vector<int>& cands, const std::string& kind) {
          return loss(probs, set_from_indices(cands), parse_objective(kind));
        },
        py::arg("probs"), py::arg("candidates"), py::arg("objective"),
        "Loss over a probability vector; candidates are choice indices, best first.");
  m.def("loss_and_grad",
        [](const std::vector<double>& logits, const std::vector<int>& cands, const std::string& kind) {
          auto r = loss_and_grad(logits, set_from_indices(cands), parse_objective(kind));
          return std::make_pair(r.loss, r.grad_logits);
        },
        py::arg("logits"), py::arg("candidates"), py::arg("objective"));
  m.def("anneal_probability",
        [](std::uint64_t step, double tau) { return AnnealSchedule{tau, 0.8}.mml_probability(step); },
        py::arg("step"), py::arg("tau") = kDefaultTau);

  m.def("train",
        [](const ExampleSet& set, const std::map<std::string, std::vector<int>>& cands,
           const std::string& objective, int total_steps, int warmup_steps, int batch_size,
           double lr, std::uint64_t seed, std::optional<double> tau) {
          std::vector<CandidateSet> sets;
          for (const auto& [id, c] : cands) {
            auto s = set_from_indices(c);
            s.example_id = id;
            sets.push_back(std::move(s));
          }
          TrainingConfig config;
          config.objective = parse_objective(objective);
          config.total_steps = total_steps;
          config.warmup_steps = warmup_steps;
          config.batch_size = batch_size;
          config.peak_lr = lr;
          config.seed = seed;
          if (tau) config.anneal = AnnealSchedule{*tau, 0.8};
          const auto result = train(set.examples, sets, nullptr, config);
          std::vector<double> w(result.scorer.weights.begin(), result.scorer.weights.end());
          return std::make_pair(w, result.scorer.bias);
        },
        py::arg("examples"), py::arg("candidates"), py::arg("objective"), py::arg("total_steps"),
        py::arg("warmup_steps") = 0, py::arg("batch_size") = 32, py::arg("lr") = 0.5,
        py::arg("seed") = 0, py::arg("tau") = py::none());
  m.def("predict",
        [](const std::vector<double>& weights, double bias, const Example& ex) {
          LinearScorer s;
          if (weights.size() != kNumFeatures) throw UsageError("expected 6 weights");
          std::copy(weights.begin(), weights.end(), s.weights.begin());
          s.bias = bias;
          return predict(s, ex, nullptr);
        },
        py::arg("weights"), py::arg("bias"), py::arg("example"));

  m.def("accuracy",
        [](const std::map<std::string, int>& preds, const std::map<std::string, int>& gold) {
          return accuracy(PredictionMap(preds.begin(), preds.end()), GoldMap(gold.begin(), gold.end()));
        },
        py::arg("predictions"), py::arg("gold"));
}
