#include "umcqa/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "umcqa/error.hpp"

namespace umcqa {

std::string_view to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::HighestOnly: return "highest";
    case ObjectiveKind::MML: return "mml";
    case ObjectiveKind::HardEM: return "hard-em";
  }
  return "mml";
}

ObjectiveKind parse_objective(std::string_view s) {
  if (s == "highest") return ObjectiveKind::HighestOnly;
  if (s == "mml") return ObjectiveKind::MML;
  if (s == "hard-em") return ObjectiveKind::HardEM;
  throw UsageError("unknown objective '" + std::string(s) + "' (expected highest|mml|hard-em)");
}

double AnnealSchedule::mml_probability(std::uint64_t step) const {
  return std::min(static_cast<double>(step) / tau, cap);
}

namespace {

void check_candidates(const CandidateSet& cands, std::size_t n) {
  if (cands.entries.empty()) {
    throw Error("no supervision signal: empty candidate set for example " + cands.example_id);
  }
  for (const auto& c : cands.entries) {
    if (c.choice < 0 || static_cast<std::size_t>(c.choice) >= n) {
      throw Error("candidate index out of range for example " + cands.example_id);
    }
  }
}

void check_probs(std::span<const double> probs, const CandidateSet& cands) {
  check_candidates(cands, probs.size());
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw Error("probabilities do not sum to 1");
}

double log_sum_exp(std::span<const double> xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : xs) hi = std::max(hi, x);
  if (!std::isfinite(hi)) return hi;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - hi);
  return hi + std::log(sum);
}

// Candidate with the largest value; lowest choice index on ties.
int argmax_candidate(std::span<const double> values, const CandidateSet& cands) {
  int best = -1;
  for (const auto& c : cands.entries) {
    if (best < 0 || values[c.choice] > values[best] ||
        (values[c.choice] == values[best] && c.choice < best)) {
      best = c.choice;
    }
  }
  return best;
}

double neg_log(double p, const CandidateSet& cands) {
  if (!(p > 0.0)) throw Error("degenerate scorer: zero candidate mass for " + cands.example_id);
  return -std::log(p);
}

}  // namespace

double loss_highest_only(std::span<const double> probs, const CandidateSet& cands) {
  check_probs(probs, cands);
  return neg_log(probs[cands.entries.front().choice], cands);
}

double loss_mml(std::span<const double> probs, const CandidateSet& cands) {
  check_probs(probs, cands);
  double mass = 0.0;
  for (const auto& c : cands.entries) mass += probs[c.choice];
  return neg_log(mass, cands);
}

double loss_hard_em(std::span<const double> probs, const CandidateSet& cands) {
  check_probs(probs, cands);
  return neg_log(probs[argmax_candidate(probs, cands)], cands);
}

double loss(std::span<const double> probs, const CandidateSet& cands, ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::HighestOnly: return loss_highest_only(probs, cands);
    case ObjectiveKind::MML: return loss_mml(probs, cands);
    case ObjectiveKind::HardEM: return loss_hard_em(probs, cands);
  }
  return 0.0;
}

std::vector<double> log_softmax(std::span<const double> logits) {
  const double norm = log_sum_exp(logits);
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - norm;
  return out;
}

std::vector<double> softmax(std::span<const double> logits) {
  auto out = log_softmax(logits);
  for (auto& v : out) v = std::exp(v);
  return out;
}

LossResult loss_and_grad(std::span<const double> logits, const CandidateSet& cands,
                         ObjectiveKind kind) {
  check_candidates(cands, logits.size());
  const auto logp = log_softmax(logits);
  LossResult out;
  out.grad_logits.resize(logits.size());
  for (std::size_t j = 0; j < logits.size(); ++j) out.grad_logits[j] = std::exp(logp[j]);

  if (kind == ObjectiveKind::MML) {
    std::vector<double> cand_logp;
    cand_logp.reserve(cands.entries.size());
    for (const auto& c : cands.entries) cand_logp.push_back(logp[c.choice]);
    const double log_mass = log_sum_exp(cand_logp);
    if (!std::isfinite(log_mass)) {
      throw Error("degenerate scorer: zero candidate mass for " + cands.example_id);
    }
    out.loss = -log_mass;
    // Posterior over candidates, P_j / sum_{i in T} P_i.
    std::vector<bool> seen(logits.size(), false);
    for (const auto& c : cands.entries) {
      if (seen[c.choice]) continue;
      seen[c.choice] = true;
      out.grad_logits[c.choice] -= std::exp(logp[c.choice] - log_mass);
    }
    return out;
  }

  const int target = kind == ObjectiveKind::HighestOnly ? cands.entries.front().choice
                                                        : argmax_candidate(logp, cands);
  out.loss = -logp[target];
  out.grad_logits[target] -= 1.0;
  return out;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ObjectiveKind anneal_pick(std::uint64_t step, const AnnealSchedule& schedule,
                          std::mt19937_64& rng) {
  const double u = uniform01(rng);
  return u < schedule.mml_probability(step) ? ObjectiveKind::MML : ObjectiveKind::HardEM;
}

}  // namespace umcqa
