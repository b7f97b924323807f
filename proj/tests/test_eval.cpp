#include "doctest.h"

#include <random>

#include "umcqa/error.hpp"
#include "umcqa/eval.hpp"
#include "umcqa/io.hpp"

using namespace umcqa;

namespace {

ExampleSet small_set() {
  ExampleSet set;
  set.name = "toy";
  set.examples.push_back(make_example("a", "p", "Why did it rain?", {"x", "y"}, 0, Subset::RaceM));
  set.examples.push_back(make_example("b", "p", "What is it?", {"x", "y"}, 1, Subset::RaceM));
  set.examples.push_back(make_example("c", "p", "The story is about _ .", {"x", "y"}, 1, Subset::RaceH));
  set.examples.push_back(make_example("d", "p", "What next?", {"x", "y"}, 0, Subset::RaceH));
  return set;
}

}  // namespace

TEST_CASE("accuracy") {
  const GoldMap gold{{"a", 0}, {"b", 1}, {"c", 2}, {"d", 3}};
  CHECK(accuracy({{"a", 0}, {"b", 1}, {"c", 2}, {"d", 3}}, gold) == 100.0);
  CHECK(accuracy({{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}}, gold) == 25.0);
  CHECK_THROWS_AS(accuracy({}, gold), Error);
  CHECK_THROWS_AS(accuracy({{"zzz", 0}}, gold), Error);
}

TEST_CASE("breakdown_report groups and recomposes") {
  const ExampleSet set = small_set();
  const GoldMap gold = gold_map(set);
  const PredictionMap preds{{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}};
  const EvalReport r = breakdown_report(preds, gold, set);
  CHECK(r.overall_accuracy == 50.0);
  CHECK(r.count == 4);
  REQUIRE(r.by_subset.size() == 2);
  CHECK(r.by_subset.at(Subset::RaceM) == GroupAccuracy{50.0, 2});
  CHECK(r.by_subset.at(Subset::RaceH) == GroupAccuracy{50.0, 2});
  REQUIRE(r.by_qtype.size() == 3);
  CHECK(r.by_qtype.at(QuestionType::Why) == GroupAccuracy{100.0, 1});
  CHECK(r.by_qtype.at(QuestionType::What) == GroupAccuracy{0.0, 2});
  CHECK(r.by_qtype.at(QuestionType::Other) == GroupAccuracy{100.0, 1});

  ExampleSet only_m = set;
  only_m.examples.resize(2);
  const EvalReport rm = breakdown_report({{"a", 0}, {"b", 1}}, gold, only_m);
  CHECK(rm.by_subset.size() == 1);
}

TEST_CASE("breakdown invariants on random predictions") {
  std::mt19937_64 rng(12);
  ExampleSet set;
  const Subset subsets[] = {Subset::RaceM, Subset::RaceH, Subset::Mc500One, Subset::Mc500Multi};
  const char* questions[] = {"Why?", "What?", "Where?", "When?", "Who?", "How?", "Fill _"};
  for (int i = 0; i < 300; ++i) {
    set.examples.push_back(make_example("e" + std::to_string(i), "p", questions[rng() % 7], {"a", "b", "c", "d"},
                                        static_cast<int>(rng() % 4), subsets[rng() % 4]));
  }
  const GoldMap gold = gold_map(set);
  PredictionMap preds;
  for (const auto& ex : set.examples) preds[ex.id] = static_cast<int>(rng() % 4);
  const EvalReport r = breakdown_report(preds, gold, set);

  std::size_t n_sub = 0, n_q = 0;
  double weighted = 0.0;
  for (const auto& [k, g] : r.by_subset) {
    n_sub += g.count;
    weighted += g.accuracy * static_cast<double>(g.count);
    CHECK(g.accuracy >= 0.0);
    CHECK(g.accuracy <= 100.0);
  }
  for (const auto& [k, g] : r.by_qtype) n_q += g.count;
  CHECK(n_sub == preds.size());
  CHECK(n_q == preds.size());
  CHECK(std::abs(weighted / static_cast<double>(n_sub) - r.overall_accuracy) < 1e-9);

  // report JSON round-trips
  EvalReport full = r;
  full.candidate_stats = CandidateStats{2.5, 80.0, 32.0, 300};
  full.method_comparison = MethodComparison{4, 9};
  full.run_metadata = {{"method", "sw"}, {"seed", "7"}};
  const auto j = io::to_json(full);
  CHECK(io::to_json(io::report_from_json(j)) == j);
  CHECK(io::to_json(io::report_from_json(nlohmann::json::parse(j.dump()))).dump() == j.dump());

  const std::string csv = io::report_csv(full);
  CHECK(csv.rfind("grouping,key,accuracy,count\noverall,all,", 0) == 0);
}
