#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "umcqa/candidates.hpp"
#include "umcqa/corpus.hpp"
#include "umcqa/eval.hpp"
#include "umcqa/matching.hpp"
#include "umcqa/scorer.hpp"

// File formats shared by the CLI stages. Every writer emits keys in sorted
// order and doubles in round-trip precision, so re-runs are byte-identical.
namespace umcqa::io {

namespace fs = std::filesystem;
using nlohmann::json;

json to_json(const Example& ex);
Example example_from_json(const json& j);

// One Example per line; each line also carries "set" and "split".
void write_example_set(const fs::path& path, const ExampleSet& set);
ExampleSet read_example_set(const fs::path& path);

EqaMap read_eqa_predictions(const fs::path& path);
void write_eqa_predictions(const fs::path& path, const std::vector<EqaPrediction>& preds);

void write_choice_scores(const fs::path& path, const std::vector<ChoiceScores>& scores);
std::vector<ChoiceScores> read_choice_scores(const fs::path& path);

void write_candidate_sets(const fs::path& path, const std::vector<CandidateSet>& sets);
std::vector<CandidateSet> read_candidate_sets(const fs::path& path);

json to_json(const CandidateStats& stats);

json to_json(const TrainingConfig& config);

// {"weights": [...], "bias": x, "feature_set_version": 1}, plus an optional
// "config" echo of the training run.
void write_model(const fs::path& path, const LinearScorer& scorer,
                 const TrainingConfig* config = nullptr);
LinearScorer read_model(const fs::path& path, json* config_out = nullptr);

void write_train_log(const fs::path& path, const TrainLog& log);

json to_json(const EvalReport& report);
EvalReport report_from_json(const json& j);
void write_report_json(const fs::path& path, const EvalReport& report);
// Rows of grouping,key,accuracy,count.
std::string report_csv(const EvalReport& report);
void write_report_csv(const fs::path& path, const EvalReport& report);

std::string format_double(double v);
void write_text(const fs::path& path, const std::string& text);
std::vector<json> read_jsonl(const fs::path& path);

}  // namespace umcqa::io
