#include "umcqa/matching.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "umcqa/error.hpp"

namespace umcqa {

InverseCountTable::InverseCountTable(std::span<const std::string> passage)
    : total_(passage.size()) {
  for (const auto& w : passage) ++counts_[w];
}

std::size_t InverseCountTable::count(const std::string& word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

double InverseCountTable::ic(const std::string& word) const { return inverse_count(count(word)); }

InverseCountTable build_ic_table(std::span<const std::string> passage) {
  return InverseCountTable(passage);
}

double inverse_count(std::size_t count) {
  if (count == 0) return 0.0;
  return std::log(1.0 + 1.0 / static_cast<double>(count));
}

std::string_view to_string(MatchMethod m) { return m == MatchMethod::SW ? "sw" : "eqa"; }

MatchMethod parse_match_method(std::string_view s) {
  if (s == "sw") return MatchMethod::SW;
  if (s == "eqa") return MatchMethod::EQA;
  throw Error("unknown matching method '" + std::string(s) + "'");
}

double sliding_window_score(std::span<const std::string> passage,
                            std::span<const std::string> question,
                            std::span<const std::string> choice, const InverseCountTable& table) {
  std::unordered_set<std::string_view> window_words;
  for (const auto& w : question) window_words.insert(w);
  for (const auto& w : choice) window_words.insert(w);
  const std::size_t width = window_words.size();
  if (passage.empty() || width == 0) return 0.0;

  std::vector<double> weight(passage.size(), 0.0);
  for (std::size_t i = 0; i < passage.size(); ++i) {
    if (window_words.contains(passage[i])) weight[i] = table.ic(passage[i]);
  }

  double best = 0.0;
  for (std::size_t start = 0; start < passage.size(); ++start) {
    const std::size_t end = std::min(start + width, passage.size());
    double sum = 0.0;
    for (std::size_t pos = start; pos < end; ++pos) {
      if (weight[pos] != 0.0) sum += weight[pos];
    }
    best = std::max(best, sum);
  }
  return best;
}

namespace {

struct Block {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;
};

// Longest common substring of a[alo, ahi) and b[blo, bhi); ties go to the
// earliest start in a, then the earliest start in b.
Block longest_match(std::string_view a, std::size_t alo, std::size_t ahi, std::string_view b,
                    std::size_t blo, std::size_t bhi, std::vector<std::size_t>& prev,
                    std::vector<std::size_t>& cur) {
  Block best{alo, blo, 0};
  const std::size_t nb = bhi - blo;
  std::fill(prev.begin(), prev.begin() + nb + 1, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    cur[0] = 0;
    for (std::size_t j = blo; j < bhi; ++j) {
      const std::size_t col = j - blo + 1;
      if (a[i] == b[j]) {
        cur[col] = prev[col - 1] + 1;
        if (cur[col] > best.size) best = Block{i + 1 - cur[col], j + 1 - cur[col], cur[col]};
      } else {
        cur[col] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

std::string ascii_lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

std::size_t gestalt_matched_chars(std::string_view a, std::string_view b) {
  struct Range {
    std::size_t alo, ahi, blo, bhi;
  };
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::vector<Range> pending{{0, a.size(), 0, b.size()}};
  std::size_t matched = 0;
  while (!pending.empty()) {
    const Range r = pending.back();
    pending.pop_back();
    if (r.alo >= r.ahi || r.blo >= r.bhi) continue;
    const Block m = longest_match(a, r.alo, r.ahi, b, r.blo, r.bhi, prev, cur);
    if (m.size == 0) continue;
    matched += m.size;
    pending.push_back({r.alo, m.a, r.blo, m.b});
    pending.push_back({m.a + m.size, r.ahi, m.b + m.size, r.bhi});
  }
  return matched;
}

double gestalt_similarity(std::string_view a, std::string_view b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  const std::size_t matched = gestalt_matched_chars(ascii_lowercase(a), ascii_lowercase(b));
  return 2.0 * static_cast<double>(matched) / static_cast<double>(total);
}

double eqa_match_score(const EqaPrediction& prediction, std::string_view choice_raw) {
  return 100.0 * gestalt_similarity(prediction.span, choice_raw);
}

ChoiceScores score_choices(const Example& example, MatchMethod method, const EqaPrediction* eqa) {
  ChoiceScores out;
  out.example_id = example.id;
  out.method = method;
  out.scores.reserve(example.num_choices());
  if (method == MatchMethod::SW) {
    const InverseCountTable table(example.passage);
    for (const auto& choice : example.choices) {
      out.scores.push_back(sliding_window_score(example.passage, example.question, choice, table));
    }
  } else {
    if (eqa == nullptr) throw Error("missing EQA prediction for example " + example.id);
    if (eqa->question_id != example.id) {
      throw Error("EQA prediction id '" + eqa->question_id + "' does not match example " +
                  example.id);
    }
    for (const auto& choice : example.choices_raw) out.scores.push_back(eqa_match_score(*eqa, choice));
  }
  return out;
}

}  // namespace umcqa
