#pragma once

// Planted-signal generator: the gold choice repeats the two passage words right
// after the question's evidence window. Each distractor shares strictly fewer
// words with the passage, so the gold dominates every overlap feature.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "umcqa/corpus.hpp"

namespace umcqa::synthetic {

struct Options {
  std::size_t passage_len = 80;
  std::size_t vocab = 300;
};

inline std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

inline ExampleSet generate(std::size_t count, std::uint64_t seed, Split split,
                           const Options& opt = {}) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto word = [](char prefix, std::size_t i) { return std::string(1, prefix) + std::to_string(i); };

  ExampleSet set;
  set.name = "synthetic";
  set.split = split;
  for (std::size_t q = 0; q < count; ++q) {
    std::vector<std::string> passage(opt.passage_len);
    for (auto& w : passage) w = word('w', pick(opt.vocab));

    // Evidence: question words at [pos, pos+3), answer words at [pos+3, pos+5).
    const std::size_t pos = 4 + pick(opt.passage_len - 16);
    std::vector<std::string> question{"what"};
    for (std::size_t i = 0; i < 3; ++i) question.push_back(passage[pos + i]);
    std::vector<std::string> gold{passage[pos + 3], passage[pos + 4]};

    std::vector<std::string> d1{word('z', pick(1000)), passage[(pos + 8 + pick(opt.passage_len - 20)) % opt.passage_len]};
    std::vector<std::string> d2{passage[pick(opt.passage_len)], word('z', pick(1000))};
    std::vector<std::string> d3{word('z', pick(1000)), word('z', pick(1000))};

    std::vector<std::vector<std::string>> choices{gold, d1, d2, d3};
    std::vector<int> order{0, 1, 2, 3};
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[pick(i)]);
    std::vector<std::string> choices_raw;
    int gold_index = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] == 0) gold_index = static_cast<int>(i);
      choices_raw.push_back(join(choices[static_cast<std::size_t>(order[i])]));
    }
    set.examples.push_back(make_example("syn" + std::to_string(seed) + "-" + std::to_string(q),
                                        join(passage) + " .", join(question) + " ?",
                                        std::move(choices_raw), gold_index, Subset::Other));
  }
  return set;
}

}  // namespace umcqa::synthetic
