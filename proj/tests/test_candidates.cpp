#include "doctest.h"

#include <random>

#include "umcqa/candidates.hpp"
#include "umcqa/error.hpp"

using namespace umcqa;

namespace {

ChoiceScores scores_of(std::vector<double> s, std::string id = "q") {
  return ChoiceScores{std::move(id), MatchMethod::SW, std::move(s)};
}

std::vector<Candidate> entries(std::initializer_list<std::pair<int, double>> xs) {
  std::vector<Candidate> out;
  for (auto [c, s] : xs) out.push_back({c, s});
  return out;
}

}  // namespace

TEST_CASE("select_candidates") {
  CHECK(select_candidates(scores_of({10, 5, 3, 1}), {4, 3}).entries == entries({{0, 10}, {1, 5}}));
  CHECK(select_candidates(scores_of({1, 1, 1, 1}), {2, 3}).empty());
  CHECK(select_candidates(scores_of({7, 7, 7, 7}), {0, 3}).entries ==
        entries({{0, 7}, {1, 7}, {2, 7}}));
  CHECK(select_candidates(scores_of({1, 3, 3, 2}), {0, 2}).entries == entries({{1, 3}, {2, 3}}));
  // threshold is inclusive
  CHECK(select_candidates(scores_of({2, 1, 0, 0}), {2, 3}).entries == entries({{0, 2}}));
}

TEST_CASE("select_candidates properties") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> s(4);
    for (auto& v : s) v = static_cast<double>(rng() % 6);
    const double t = static_cast<double>(rng() % 6);
    const int k = 1 + static_cast<int>(rng() % 3);
    const auto set = select_candidates(scores_of(s), {t, k});

    const std::size_t passing = static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double v) { return v >= t; }));
    CHECK(set.entries.size() == std::min<std::size_t>(k, passing));
    for (std::size_t i = 0; i < set.entries.size(); ++i) {
      CHECK(set.entries[i].score >= t);
      CHECK(set.entries[i].score == s[set.entries[i].choice]);
      if (i > 0) {
        const auto& prev = set.entries[i - 1];
        const auto& cur = set.entries[i];
        CHECK((prev.score > cur.score || (prev.score == cur.score && prev.choice < cur.choice)));
      }
    }
    CHECK(select_candidates(scores_of(s), {t + 1, k}).entries.size() <= set.entries.size());
    CHECK(select_candidates(scores_of(s), {t, k + 1}).entries.size() >= set.entries.size());
  }
}

TEST_CASE("candidate_stats") {
  std::vector<CandidateSet> one{{"q", entries({{2, 1.0}, {0, 0.5}})}};
  const auto s = candidate_stats(one, GoldMap{{"q", 2}});
  CHECK(s.avg_size == 2.0);
  CHECK(s.pct_including_answer == 100.0);
  CHECK(s.random_baseline == 50.0);

  std::vector<CandidateSet> mixed{{"a", entries({{0, 1}})}, {"b", {}}, {"c", entries({{1, 2}, {2, 1}})}};
  const auto m = candidate_stats(mixed, GoldMap{{"a", 0}, {"b", 0}, {"c", 0}});
  CHECK(m.avg_size == doctest::Approx(1.0));
  CHECK(m.pct_including_answer == doctest::Approx(100.0 / 3.0));
  CHECK(m.random_baseline == doctest::Approx(100.0 / 3.0));

  CHECK_THROWS_AS(candidate_stats(one, GoldMap{{"other", 1}}), Error);

  // every set holds its gold: B = 100 whatever the sizes
  std::vector<CandidateSet> all{{"a", entries({{0, 1}})}, {"b", entries({{1, 3}, {3, 1}, {0, 0}})}};
  CHECK(candidate_stats(all, GoldMap{{"a", 0}, {"b", 3}}).pct_including_answer == 100.0);
}

TEST_CASE("compare_candidate_methods") {
  std::vector<CandidateSet> a{{"x", entries({{0, 1}})}, {"y", entries({{1, 1}})}};
  std::vector<CandidateSet> b{{"y", entries({{1, 1}})}, {"x", entries({{2, 1}})}};
  const GoldMap gold{{"x", 0}, {"y", 1}};
  const auto same = compare_candidate_methods(a, a, gold);
  CHECK(same.a_only == 0);
  CHECK(same.b_only == 0);
  const auto diff = compare_candidate_methods(a, b, gold);
  CHECK(diff.a_only == 1);
  CHECK(diff.b_only == 0);
  const auto rev = compare_candidate_methods(b, a, gold);
  CHECK(rev.a_only == 0);
  CHECK(rev.b_only == 1);

  std::vector<CandidateSet> c{{"x", {}}, {"z", {}}};
  CHECK_THROWS_WITH_AS(compare_candidate_methods(a, c, gold), doctest::Contains("2"), Error);
}

TEST_CASE("baseline_predict") {
  CHECK(baseline_predict(scores_of({0.1, 0.9, 0.3, 0.2})) == 1);
  CHECK(baseline_predict(scores_of({4, 4, 4, 4})) == 0);
  CHECK(baseline_predict(scores_of({1, 3, 3, 0})) == 1);
}

TEST_CASE("presets and validation") {
  CHECK(preset_config(parse_preset("race-sw")).threshold == 0.0);
  CHECK(preset_config(parse_preset("race-sw")).max_candidates == 3);
  CHECK(preset_config(parse_preset("race-eqa")).threshold == 50.0);
  CHECK(preset_config(parse_preset("mc500-sw")).threshold == 3.0);
  CHECK(preset_config(parse_preset("mc500-sw")).max_candidates == 2);
  CHECK(preset_config(parse_preset("mc500-eqa")).max_candidates == 3);
  CHECK_THROWS_AS(parse_preset("race"), UsageError);
  CHECK_NOTHROW(validate_selection({0, 3}, 4));
  CHECK_THROWS_AS(validate_selection({0, 4}, 4), UsageError);
  CHECK_THROWS_AS(validate_selection({0, 0}, 4), UsageError);
}
