#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "umcqa/error.hpp"
#include "umcqa/matching.hpp"

using namespace umcqa;

namespace {

TokenSeq random_tokens(std::mt19937_64& rng, std::size_t max_len, std::size_t vocab) {
  TokenSeq out(rng() % (max_len + 1));
  for (auto& t : out) t = "v" + std::to_string(rng() % vocab);
  return out;
}

std::string random_string(std::mt19937_64& rng, std::size_t max_len, std::string_view alphabet) {
  std::string s(rng() % (max_len + 1), ' ');
  for (auto& c : s) c = alphabet[rng() % alphabet.size()];
  return s;
}

}  // namespace

TEST_CASE("inverse count table") {
  const TokenSeq p{"the", "cat", "sat", "on", "the", "mat"};
  const auto table = build_ic_table(p);
  CHECK(table.count("the") == 2);
  CHECK(table.count("cat") == 1);
  CHECK(table.count("dog") == 0);
  CHECK(table.ic("cat") == doctest::Approx(0.6931471805599453).epsilon(1e-15));
  CHECK(table.ic("the") == doctest::Approx(std::log(1.5)));
  CHECK(table.ic("dog") == 0.0);

  std::size_t total = 0;
  for (const auto& [w, c] : table.counts()) total += c;
  CHECK(total == p.size());
  for (const auto& [w, c] : table.counts()) {
    CHECK(table.ic(w) > 0.0);
    CHECK(table.ic(w) <= std::log(2.0));
  }
}

TEST_CASE("sliding window fixed cases") {
  const TokenSeq p{"the", "cat", "sat", "on", "the", "mat"};
  const auto table = build_ic_table(p);
  CHECK(sliding_window_score(p, TokenSeq{"dog"}, TokenSeq{"bird"}, table) == 0.0);

  // Oracle value: windows of width 2 hold at most one of {cat, mat}.
  const double cat_mat = oracle::sliding_window(p, {"cat"}, {"mat"});
  CHECK(cat_mat == 0.6931471805599453);
  CHECK(sliding_window_score(p, TokenSeq{"cat"}, TokenSeq{"mat"}, table) == cat_mat);

  const TokenSeq five{"a", "b", "c", "d", "e"};
  const double whole = oracle::sliding_window(five, {}, five);
  CHECK(whole == doctest::Approx(5.0 * std::log(2.0)));
  CHECK(sliding_window_score(five, TokenSeq{}, five, build_ic_table(five)) == whole);

  CHECK(sliding_window_score(TokenSeq{}, TokenSeq{"a"}, TokenSeq{"b"}, build_ic_table(TokenSeq{})) == 0.0);
  CHECK(sliding_window_score(p, TokenSeq{}, TokenSeq{}, table) == 0.0);
}

TEST_CASE("sliding window equals brute-force oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = random_tokens(rng, 30, 10);
    const auto q = random_tokens(rng, 6, 10);
    const auto c = random_tokens(rng, 6, 10);
    REQUIRE(sliding_window_score(p, q, c, build_ic_table(p)) == oracle::sliding_window(p, q, c));
  }
}

TEST_CASE("sliding window ignores duplicate words in the query") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_tokens(rng, 30, 8);
    auto q = random_tokens(rng, 5, 8);
    const auto c = random_tokens(rng, 5, 8);
    const auto table = build_ic_table(p);
    const double base = sliding_window_score(p, q, c, table);
    TokenSeq dup_q = q;
    dup_q.insert(dup_q.end(), q.begin(), q.end());
    dup_q.insert(dup_q.end(), c.begin(), c.end());
    CHECK(sliding_window_score(p, dup_q, c, table) == base);
  }
}

TEST_CASE("gestalt similarity") {
  CHECK(gestalt_similarity("abc", "abc") == 1.0);
  CHECK(gestalt_similarity("abc", "xyz") == 0.0);
  CHECK(gestalt_similarity("", "") == 1.0);
  CHECK(gestalt_similarity("", "abc") == 0.0);
  CHECK(gestalt_similarity("ABC", "abc") == 1.0);
  // difflib.SequenceMatcher(None, "WIKIMEDIA", "WIKIMANIA").ratio()
  CHECK(gestalt_similarity("WIKIMEDIA", "WIKIMANIA") == doctest::Approx(14.0 / 18.0));
  CHECK(gestalt_matched_chars("GESTALT PRACTICE", "GESTURE PRACTICE") == 13);
}

TEST_CASE("gestalt equals the recursive oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_string(rng, 40, "abcdefgh");
    const auto b = random_string(rng, 40, "abcdefgh");
    const double s = gestalt_similarity(a, b);
    REQUIRE(s == oracle::gestalt(a, b));
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK((s == 1.0) == (a == b));
  }
}

TEST_CASE("eqa match score") {
  const EqaPrediction p{"q1", "red apple", std::nullopt};
  CHECK(eqa_match_score(p, "red apple") == 100.0);
  CHECK(eqa_match_score(EqaPrediction{"q1", "", std::nullopt}, "apple") == 0.0);
  CHECK(eqa_match_score(p, "A red car") == doctest::Approx(100.0 * oracle::gestalt("red apple", "A red car")));
}

TEST_CASE("score_choices") {
  const Example ex = make_example("e1", "Tom ate a red apple in the park.", "What did Tom eat?",
                                  {"a red apple", "the park", "a blue car", "Tom"}, 0, Subset::Other);
  const auto sw = score_choices(ex, MatchMethod::SW);
  REQUIRE(sw.scores.size() == 4);
  CHECK(sw.method == MatchMethod::SW);
  const auto table = build_ic_table(ex.passage);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(sw.scores[i] == sliding_window_score(ex.passage, ex.question, ex.choices[i], table));
    CHECK(sw.scores[i] >= 0.0);
  }

  const EqaPrediction pred{"e1", "a red apple", 0.9};
  const auto eqa = score_choices(ex, MatchMethod::EQA, &pred);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(eqa.scores[i] == eqa_match_score(pred, ex.choices_raw[i]));
    CHECK(eqa.scores[i] >= 0.0);
    CHECK(eqa.scores[i] <= 100.0);
  }
  CHECK(eqa.scores[0] == 100.0);

  CHECK_THROWS_WITH_AS(score_choices(ex, MatchMethod::EQA), doctest::Contains("e1"), Error);
  const EqaPrediction other{"e2", "x", std::nullopt};
  CHECK_THROWS_WITH_AS(score_choices(ex, MatchMethod::EQA, &other), doctest::Contains("e1"), Error);

  const Example empty = make_example("e3", "", "What?", {"a", "b", "c", "d"}, 0, Subset::Other);
  CHECK(score_choices(empty, MatchMethod::SW).scores == std::vector<double>(4, 0.0));
}
