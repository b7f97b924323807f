#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "umcqa/corpus.hpp"

namespace umcqa {

/// Per-passage word counts with inverse-count weights
/// IC(w) = ln(1 + 1 / Count(w)); words absent from the passage weigh 0.
class InverseCountTable {
 public:
  InverseCountTable() = default;
  explicit InverseCountTable(std::span<const std::string> passage);

  std::size_t count(const std::string& word) const;
  double ic(const std::string& word) const;
  std::size_t total() const { return total_; }
  const std::map<std::string, std::size_t, std::less<>>& counts() const { return counts_; }

 private:
  std::map<std::string, std::size_t, std::less<>> counts_;
  std::size_t total_ = 0;
};

InverseCountTable build_ic_table(std::span<const std::string> passage);

/// IC weight for a word seen `count` times; 0 for count == 0.
double inverse_count(std::size_t count);

struct EqaPrediction {
  std::string question_id;
  std::string span;
  std::optional<double> confidence;

  bool operator==(const EqaPrediction&) const = default;
};

enum class MatchMethod { SW, EQA };

std::string_view to_string(MatchMethod m);
MatchMethod parse_match_method(std::string_view s);

struct ChoiceScores {
  std::string example_id;
  MatchMethod method = MatchMethod::SW;
  std::vector<double> scores;

  bool operator==(const ChoiceScores&) const = default;
};

/// Best window of |S| consecutive passage positions, where S is the
/// de-duplicated union of question and choice tokens. Each position inside
/// the window contributes IC(P_pos) when P_pos is in S; positions past the
/// passage end contribute 0.
double sliding_window_score(std::span<const std::string> passage,
                            std::span<const std::string> question,
                            std::span<const std::string> choice, const InverseCountTable& table);

/// Ratcliff-Obershelp similarity 2*M / (|a| + |b|) on ASCII-lowercased
/// strings, M being the total size of matching blocks found by recursive
/// longest-common-substring decomposition. Two empty strings compare as 1.
double gestalt_similarity(std::string_view a, std::string_view b);

/// Total matched characters of the recursive decomposition (case-sensitive).
std::size_t gestalt_matched_chars(std::string_view a, std::string_view b);

/// 100 * gestalt_similarity(prediction.span, choice_raw).
double eqa_match_score(const EqaPrediction& prediction, std::string_view choice_raw);

ChoiceScores score_choices(const Example& example, MatchMethod method,
                           const EqaPrediction* eqa = nullptr);

}  // namespace umcqa
