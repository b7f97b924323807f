#include "umcqa/candidates.hpp"

#include <algorithm>
#include <set>

#include "umcqa/error.hpp"

namespace umcqa {

SelectionConfig preset_config(Preset p) {
  switch (p) {
    case Preset::RaceSW: return {0.0, 3};
    case Preset::RaceEQA: return {50.0, 3};
    case Preset::Mc500SW: return {3.0, 2};
    case Preset::Mc500EQA: return {50.0, 3};
  }
  return {};
}

Preset parse_preset(std::string_view name) {
  for (auto p : {Preset::RaceSW, Preset::RaceEQA, Preset::Mc500SW, Preset::Mc500EQA}) {
    if (to_string(p) == name) return p;
  }
  throw UsageError("unknown preset '" + std::string(name) + "'");
}

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::RaceSW: return "race-sw";
    case Preset::RaceEQA: return "race-eqa";
    case Preset::Mc500SW: return "mc500-sw";
    case Preset::Mc500EQA: return "mc500-eqa";
  }
  return "race-sw";
}

void validate_selection(const SelectionConfig& config, std::size_t num_choices) {
  if (config.max_candidates < 1) throw UsageError("max candidates k must be at least 1");
  if (static_cast<std::size_t>(config.max_candidates) >= num_choices) {
    throw UsageError("max candidates k = " + std::to_string(config.max_candidates) +
                     " must be smaller than the number of choices (" +
                     std::to_string(num_choices) + ")");
  }
}

bool CandidateSet::contains(int choice) const {
  return std::any_of(entries.begin(), entries.end(),
                     [choice](const Candidate& c) { return c.choice == choice; });
}

CandidateSet select_candidates(const ChoiceScores& scores, const SelectionConfig& config) {
  CandidateSet out;
  out.example_id = scores.example_id;
  for (std::size_t i = 0; i < scores.scores.size(); ++i) {
    if (scores.scores[i] >= config.threshold) {
      out.entries.push_back({static_cast<int>(i), scores.scores[i]});
    }
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const Candidate& x, const Candidate& y) { return x.score > y.score; });
  if (out.entries.size() > static_cast<std::size_t>(std::max(config.max_candidates, 0))) {
    out.entries.resize(static_cast<std::size_t>(std::max(config.max_candidates, 0)));
  }
  return out;
}

CandidateStats candidate_stats(std::span<const CandidateSet> sets, const GoldMap& gold) {
  CandidateStats stats;
  stats.num_sets = sets.size();
  if (sets.empty()) return stats;
  std::size_t total_size = 0;
  std::size_t including = 0;
  for (const auto& set : sets) {
    auto it = gold.find(set.example_id);
    if (it == gold.end()) throw Error("no gold label for example " + set.example_id);
    total_size += set.entries.size();
    if (set.contains(it->second)) ++including;
  }
  const double n = static_cast<double>(sets.size());
  stats.avg_size = static_cast<double>(total_size) / n;
  stats.pct_including_answer = 100.0 * static_cast<double>(including) / n;
  stats.random_baseline = stats.avg_size > 0.0 ? stats.pct_including_answer / stats.avg_size : 0.0;
  return stats;
}

MethodComparison compare_candidate_methods(std::span<const CandidateSet> sets_a,
                                           std::span<const CandidateSet> sets_b,
                                           const GoldMap& gold) {
  std::map<std::string_view, const CandidateSet*> by_id_b;
  for (const auto& s : sets_b) by_id_b.emplace(s.example_id, &s);
  std::set<std::string_view> ids_a;
  for (const auto& s : sets_a) ids_a.insert(s.example_id);

  std::size_t mismatched = 0;
  for (const auto& id : ids_a) mismatched += by_id_b.contains(id) ? 0 : 1;
  for (const auto& [id, _] : by_id_b) mismatched += ids_a.contains(id) ? 0 : 1;
  if (mismatched != 0 || ids_a.size() != sets_a.size() || by_id_b.size() != sets_b.size()) {
    throw Error("candidate set lists cover different example ids (symmetric difference: " +
                std::to_string(mismatched) + ")");
  }

  MethodComparison out;
  for (const auto& a : sets_a) {
    auto it = gold.find(a.example_id);
    if (it == gold.end()) throw Error("no gold label for example " + a.example_id);
    const bool in_a = a.contains(it->second);
    const bool in_b = by_id_b.at(a.example_id)->contains(it->second);
    if (in_a && !in_b) ++out.a_only;
    if (in_b && !in_a) ++out.b_only;
  }
  return out;
}

int baseline_predict(const ChoiceScores& scores) {
  if (scores.scores.empty()) throw Error("no scores for example " + scores.example_id);
  auto it = std::max_element(scores.scores.begin(), scores.scores.end());
  return static_cast<int>(it - scores.scores.begin());
}

}  // namespace umcqa
