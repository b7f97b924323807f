#include "umcqa/eval.hpp"

#include "umcqa/error.hpp"

namespace umcqa {

namespace {

struct Tally {
  std::size_t correct = 0;
  std::size_t total = 0;

  GroupAccuracy finish() const {
    return {total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(total),
            total};
  }
};

bool is_correct(const std::string& id, int predicted, const GoldMap& gold) {
  auto it = gold.find(id);
  if (it == gold.end()) throw Error("prediction for unknown example id " + id);
  return it->second == predicted;
}

}  // namespace

double accuracy(const PredictionMap& predictions, const GoldMap& gold) {
  if (predictions.empty()) throw Error("accuracy of an empty prediction set is undefined");
  Tally t;
  for (const auto& [id, pred] : predictions) {
    t.correct += is_correct(id, pred, gold) ? 1 : 0;
    ++t.total;
  }
  return t.finish().accuracy;
}

GoldMap gold_map(const ExampleSet& set) {
  GoldMap gold;
  for (const auto& ex : set.examples) {
    if (ex.gold) gold.emplace(ex.id, *ex.gold);
  }
  return gold;
}

EvalReport breakdown_report(const PredictionMap& predictions, const GoldMap& gold,
                            const ExampleSet& examples, std::optional<CandidateStats> stats,
                            std::optional<MethodComparison> comparison) {
  EvalReport report;
  report.overall_accuracy = accuracy(predictions, gold);
  report.count = predictions.size();

  std::map<std::string_view, const Example*> by_id;
  for (const auto& ex : examples.examples) by_id.emplace(ex.id, &ex);

  std::map<Subset, Tally> subsets;
  std::map<QuestionType, Tally> qtypes;
  for (const auto& [id, pred] : predictions) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error("prediction for example " + id + " not in the example set");
    const bool ok = is_correct(id, pred, gold);
    for (Tally* t : {&subsets[it->second->subset], &qtypes[it->second->qtype]}) {
      t->correct += ok ? 1 : 0;
      ++t->total;
    }
  }
  for (const auto& [k, t] : subsets) report.by_subset[k] = t.finish();
  for (const auto& [k, t] : qtypes) report.by_qtype[k] = t.finish();
  report.candidate_stats = stats;
  report.method_comparison = comparison;
  return report;
}

}  // namespace umcqa
