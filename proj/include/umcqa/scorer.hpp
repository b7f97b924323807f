#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "umcqa/candidates.hpp"
#include "umcqa/corpus.hpp"
#include "umcqa/matching.hpp"
#include "umcqa/objectives.hpp"

namespace umcqa {

inline constexpr std::size_t kNumFeatures = 6;
inline constexpr int kFeatureSetVersion = 1;
inline constexpr std::size_t kMaxPassageTokens = 320;

// Raw features, in order: sliding-window score, EQA gestalt score (0..100),
// fraction of choice words found in the passage, fraction found in the
// question, IC-weighted choice/passage overlap, ln(1 + choice length).
// After featurize() each column is standardized across the choices of one
// question.
using FeatureVector = std::array<double, kNumFeatures>;

using EqaMap = std::map<std::string, EqaPrediction, std::less<>>;

// Read-only view of the fields the scorer consumes; gold is not reachable.
struct ExampleView {
  std::string_view id;
  std::span<const std::string> passage;
  std::span<const std::string> question;
  std::span<const TokenSeq> choices;
  std::span<const std::string> choices_raw;

  ExampleView(const Example& ex)  // NOLINT(google-explicit-constructor)
      : id(ex.id), passage(ex.passage), question(ex.question), choices(ex.choices),
        choices_raw(ex.choices_raw) {}
  ExampleView(const UnlabeledExample& ex)  // NOLINT(google-explicit-constructor)
      : id(ex.id), passage(ex.passage), question(ex.question), choices(ex.choices),
        choices_raw(ex.choices_raw) {}
};

/// First kMaxPassageTokens passage tokens; the model never sees more.
std::span<const std::string> truncated_passage(std::span<const std::string> passage);

std::vector<FeatureVector> raw_features(const ExampleView& example, const EqaPrediction* eqa,
                                        const InverseCountTable& table);

/// Zero mean, unit (population) variance per column across choices; a
/// constant column becomes all zeros.
void standardize(std::vector<FeatureVector>& features);

/// `table` must be built from truncated_passage(example.passage).
std::vector<FeatureVector> featurize(const ExampleView& example, const EqaPrediction* eqa,
                                     const InverseCountTable& table);
std::vector<FeatureVector> featurize(const ExampleView& example, const EqaPrediction* eqa);

struct LinearScorer {
  std::array<double, kNumFeatures> weights{};
  double bias = 0.0;

  bool operator==(const LinearScorer&) const = default;
};

std::vector<double> logits(const LinearScorer& scorer, std::span<const FeatureVector> features);
std::vector<double> forward(const LinearScorer& scorer, std::span<const FeatureVector> features);

struct TrainingConfig {
  int batch_size = 32;
  int warmup_steps = 1000;
  int total_steps = 0;
  double peak_lr = 0.5;
  std::uint64_t seed = 0;
  ObjectiveKind objective = ObjectiveKind::MML;
  std::optional<AnnealSchedule> anneal;
};

void validate(const TrainingConfig& config);

/// Linear warmup from 0 to peak_lr at warmup_steps, then linear decay to 0
/// at total_steps.
double learning_rate(int step, const TrainingConfig& config);

struct TrainRecord {
  int step = 0;
  ObjectiveKind objective = ObjectiveKind::MML;
  double loss = 0.0;
  double lr = 0.0;

  bool operator==(const TrainRecord&) const = default;
};

using TrainLog = std::vector<TrainRecord>;

struct TrainResult {
  LinearScorer scorer;
  TrainLog log;
};

/// Mini-batch gradient descent on the weak-supervision objective. Examples
/// without a nonempty candidate set are dropped from the stream.
TrainResult train(std::span<const UnlabeledExample> examples,
                  std::span<const CandidateSet> cands, const EqaMap* eqa,
                  const TrainingConfig& config);
TrainResult train(const std::vector<Example>& examples, std::span<const CandidateSet> cands,
                  const EqaMap* eqa, const TrainingConfig& config);

/// Argmax over all choices (no candidate filtering); lowest index on ties.
int predict(const LinearScorer& scorer, const ExampleView& example, const EqaPrediction* eqa,
            const InverseCountTable& table);
int predict(const LinearScorer& scorer, const ExampleView& example, const EqaPrediction* eqa);

}  // namespace umcqa
