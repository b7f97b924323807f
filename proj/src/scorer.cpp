#include "umcqa/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "umcqa/error.hpp"

namespace umcqa {

std::span<const std::string> truncated_passage(std::span<const std::string> passage) {
  return passage.first(std::min(passage.size(), kMaxPassageTokens));
}

std::vector<FeatureVector> raw_features(const ExampleView& example, const EqaPrediction* eqa,
                                        const InverseCountTable& table) {
  const auto passage = truncated_passage(example.passage);
  const std::unordered_set<std::string_view> question_words(example.question.begin(),
                                                            example.question.end());
  std::vector<FeatureVector> out;
  out.reserve(example.choices.size());
  for (std::size_t i = 0; i < example.choices.size(); ++i) {
    const auto& choice = example.choices[i];
    FeatureVector f{};
    f[0] = sliding_window_score(passage, example.question, choice, table);
    f[1] = eqa != nullptr ? eqa_match_score(*eqa, example.choices_raw[i]) : 0.0;

    std::vector<std::string_view> distinct(choice.begin(), choice.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::size_t in_passage = 0;
    std::size_t in_question = 0;
    double ic_overlap = 0.0;
    for (const auto& w : distinct) {
      const std::string word(w);
      if (table.count(word) > 0) {
        ++in_passage;
        ic_overlap += table.ic(word);
      }
      if (question_words.contains(w)) ++in_question;
    }
    if (!distinct.empty()) {
      f[2] = static_cast<double>(in_passage) / static_cast<double>(distinct.size());
      f[3] = static_cast<double>(in_question) / static_cast<double>(distinct.size());
    }
    f[4] = ic_overlap;
    f[5] = std::log(1.0 + static_cast<double>(choice.size()));
    out.push_back(f);
  }
  return out;
}

void standardize(std::vector<FeatureVector>& features) {
  if (features.empty()) return;
  const double n = static_cast<double>(features.size());
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    const bool constant = std::all_of(features.begin(), features.end(), [&](const FeatureVector& f) {
      return f[k] == features.front()[k];
    });
    double mean = 0.0;
    for (const auto& f : features) mean += f[k];
    mean /= n;
    double var = 0.0;
    for (const auto& f : features) var += (f[k] - mean) * (f[k] - mean);
    var /= n;
    if (constant || !(var > 0.0)) {
      for (auto& f : features) f[k] = 0.0;
      continue;
    }
    const double sd = std::sqrt(var);
    for (auto& f : features) f[k] = (f[k] - mean) / sd;
  }
}

std::vector<FeatureVector> featurize(const ExampleView& example, const EqaPrediction* eqa,
                                     const InverseCountTable& table) {
  auto features = raw_features(example, eqa, table);
  standardize(features);
  return features;
}

std::vector<FeatureVector> featurize(const ExampleView& example, const EqaPrediction* eqa) {
  return featurize(example, eqa, InverseCountTable(truncated_passage(example.passage)));
}

std::vector<double> logits(const LinearScorer& scorer, std::span<const FeatureVector> features) {
  std::vector<double> out(features.size(), scorer.bias);
  for (std::size_t i = 0; i < features.size(); ++i) {
    for (std::size_t k = 0; k < kNumFeatures; ++k) out[i] += scorer.weights[k] * features[i][k];
  }
  return out;
}

std::vector<double> forward(const LinearScorer& scorer, std::span<const FeatureVector> features) {
  return softmax(logits(scorer, features));
}

void validate(const TrainingConfig& config) {
  if (config.batch_size < 1) throw UsageError("batch size must be positive");
  if (config.total_steps < 0) throw UsageError("total steps must be nonnegative");
  if (config.warmup_steps < 0) throw UsageError("warmup steps must be nonnegative");
  if (config.warmup_steps > config.total_steps) {
    throw UsageError("warmup steps (" + std::to_string(config.warmup_steps) +
                     ") exceed total steps (" + std::to_string(config.total_steps) + ")");
  }
  if (!(config.peak_lr > 0.0)) throw UsageError("peak learning rate must be positive");
  if (config.anneal && !(config.anneal->tau > 0.0)) throw UsageError("tau must be positive");
}

double learning_rate(int step, const TrainingConfig& config) {
  if (step <= 0) return config.warmup_steps == 0 ? config.peak_lr : 0.0;
  if (step < config.warmup_steps) {
    return config.peak_lr * static_cast<double>(step) / static_cast<double>(config.warmup_steps);
  }
  if (step >= config.total_steps) return 0.0;
  return config.peak_lr * static_cast<double>(config.total_steps - step) /
         static_cast<double>(config.total_steps - config.warmup_steps);
}

namespace {

struct TrainItem {
  std::vector<FeatureVector> features;
  const CandidateSet* cands;
};

}  // namespace

TrainResult train(std::span<const UnlabeledExample> examples,
                  std::span<const CandidateSet> cands, const EqaMap* eqa,
                  const TrainingConfig& config) {
  validate(config);
  std::map<std::string_view, const CandidateSet*> by_id;
  for (const auto& c : cands) by_id.emplace(c.example_id, &c);

  std::vector<TrainItem> items;
  for (const auto& ex : examples) {
    auto it = by_id.find(ex.id);
    if (it == by_id.end() || it->second->empty()) continue;
    const EqaPrediction* pred = nullptr;
    if (eqa != nullptr) {
      auto p = eqa->find(ex.id);
      if (p != eqa->end()) pred = &p->second;
    }
    items.push_back({featurize(ex, pred), it->second});
  }
  if (items.empty()) throw Error("no trainable examples: every candidate set is empty or missing");

  TrainResult result;
  std::mt19937_64 shuffle_rng(config.seed);
  std::mt19937_64 anneal_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(items.size());
  std::size_t cursor = order.size();
  auto next_index = [&]() {
    if (cursor == order.size()) {
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[shuffle_rng() % i]);
      }
      cursor = 0;
    }
    return order[cursor++];
  };

  LinearScorer& scorer = result.scorer;
  for (int step = 1; step <= config.total_steps; ++step) {
    const ObjectiveKind kind = config.anneal
                                   ? anneal_pick(static_cast<std::uint64_t>(step), *config.anneal,
                                                 anneal_rng)
                                   : config.objective;
    std::array<double, kNumFeatures> grad_w{};
    double grad_b = 0.0;
    double loss_sum = 0.0;
    for (int b = 0; b < config.batch_size; ++b) {
      const TrainItem& item = items[next_index()];
      const auto z = logits(scorer, item.features);
      const LossResult lr = loss_and_grad(z, *item.cands, kind);
      loss_sum += lr.loss;
      for (std::size_t j = 0; j < z.size(); ++j) {
        for (std::size_t k = 0; k < kNumFeatures; ++k) grad_w[k] += lr.grad_logits[j] * item.features[j][k];
        grad_b += lr.grad_logits[j];
      }
    }
    const double inv = 1.0 / static_cast<double>(config.batch_size);
    const double rate = learning_rate(step, config);
    for (std::size_t k = 0; k < kNumFeatures; ++k) scorer.weights[k] -= rate * grad_w[k] * inv;
    scorer.bias -= rate * grad_b * inv;
    result.log.push_back({step, kind, loss_sum * inv, rate});
  }
  return result;
}

TrainResult train(const std::vector<Example>& examples, std::span<const CandidateSet> cands,
                  const EqaMap* eqa, const TrainingConfig& config) {
  const auto unlabeled = strip_gold(examples);
  return train(std::span<const UnlabeledExample>(unlabeled), cands, eqa, config);
}

int predict(const LinearScorer& scorer, const ExampleView& example, const EqaPrediction* eqa,
            const InverseCountTable& table) {
  const auto probs = forward(scorer, featurize(example, eqa, table));
  if (probs.empty()) throw Error("example " + std::string(example.id) + " has no choices");
  return static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

int predict(const LinearScorer& scorer, const ExampleView& example, const EqaPrediction* eqa) {
  return predict(scorer, example, eqa, InverseCountTable(truncated_passage(example.passage)));
}

}  // namespace umcqa
