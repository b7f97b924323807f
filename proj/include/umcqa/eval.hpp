#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "umcqa/candidates.hpp"
#include "umcqa/corpus.hpp"

namespace umcqa {

using PredictionMap = std::map<std::string, int, std::less<>>;

struct GroupAccuracy {
  double accuracy = 0.0;
  std::size_t count = 0;

  bool operator==(const GroupAccuracy&) const = default;
};

struct EvalReport {
  double overall_accuracy = 0.0;
  std::size_t count = 0;
  std::map<Subset, GroupAccuracy> by_subset;
  std::map<QuestionType, GroupAccuracy> by_qtype;
  std::optional<CandidateStats> candidate_stats;
  std::optional<MethodComparison> method_comparison;
  // Free-form echo of the run configuration (method, objective, t, k, tau, seed).
  std::map<std::string, std::string> run_metadata;
};

/// Percentage of predictions matching gold.
double accuracy(const PredictionMap& predictions, const GoldMap& gold);

GoldMap gold_map(const ExampleSet& set);

EvalReport breakdown_report(const PredictionMap& predictions, const GoldMap& gold,
                            const ExampleSet& examples,
                            std::optional<CandidateStats> stats = std::nullopt,
                            std::optional<MethodComparison> comparison = std::nullopt);

}  // namespace umcqa
