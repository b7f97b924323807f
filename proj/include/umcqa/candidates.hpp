#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "umcqa/matching.hpp"

namespace umcqa {

struct SelectionConfig {
  double threshold = 0.0;
  int max_candidates = 3;
};

// Settings used for the RACE and MC500 experiments.
enum class Preset { RaceSW, RaceEQA, Mc500SW, Mc500EQA };

SelectionConfig preset_config(Preset p);
Preset parse_preset(std::string_view name);
std::string_view to_string(Preset p);

/// Throws UsageError unless 1 <= k < num_choices.
void validate_selection(const SelectionConfig& config, std::size_t num_choices);

struct Candidate {
  int choice = 0;
  double score = 0.0;

  bool operator==(const Candidate&) const = default;
};

// Sorted by descending score, ties by ascending choice index.
struct CandidateSet {
  std::string example_id;
  std::vector<Candidate> entries;

  bool empty() const { return entries.empty(); }
  bool contains(int choice) const;
  bool operator==(const CandidateSet&) const = default;
};

struct CandidateStats {
  double avg_size = 0.0;              // A
  double pct_including_answer = 0.0;  // B
  double random_baseline = 0.0;       // B / A, 0 when A == 0
  std::size_t num_sets = 0;
};

struct MethodComparison {
  std::size_t a_only = 0;
  std::size_t b_only = 0;
};

using GoldMap = std::map<std::string, int, std::less<>>;

/// Keeps choices scoring >= threshold, best first, truncated to max_candidates.
CandidateSet select_candidates(const ChoiceScores& scores, const SelectionConfig& config);

CandidateStats candidate_stats(std::span<const CandidateSet> sets, const GoldMap& gold);

/// Counts examples whose gold is in a's set but not b's, and vice versa.
MethodComparison compare_candidate_methods(std::span<const CandidateSet> sets_a,
                                           std::span<const CandidateSet> sets_b,
                                           const GoldMap& gold);

/// Untrained baseline: argmax of the matcher scores, lowest index on ties.
int baseline_predict(const ChoiceScores& scores);

}  // namespace umcqa
