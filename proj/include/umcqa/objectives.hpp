#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "umcqa/candidates.hpp"

namespace umcqa {

enum class ObjectiveKind { HighestOnly, MML, HardEM };

std::string_view to_string(ObjectiveKind k);
ObjectiveKind parse_objective(std::string_view s);

/// MML is used with probability min(step / tau, cap), Hard-EM otherwise.
struct AnnealSchedule {
  double tau = 4000.0;
  double cap = 0.8;

  double mml_probability(std::uint64_t step) const;
};

inline constexpr double kDefaultTau = 4000.0;
inline constexpr double kAlternativeTaus[] = {1000.0, 4000.0, 8000.0};

struct LossResult {
  double loss = 0.0;
  std::vector<double> grad_logits;
};

// Losses over an explicit probability vector. `probs` must sum to 1 within
// 1e-9 and `cands` must be nonempty.
double loss_highest_only(std::span<const double> probs, const CandidateSet& cands);
double loss_mml(std::span<const double> probs, const CandidateSet& cands);
double loss_hard_em(std::span<const double> probs, const CandidateSet& cands);
double loss(std::span<const double> probs, const CandidateSet& cands, ObjectiveKind kind);

std::vector<double> softmax(std::span<const double> logits);
std::vector<double> log_softmax(std::span<const double> logits);

/// Loss from logits computed in log space, with its analytic gradient.
LossResult loss_and_grad(std::span<const double> logits, const CandidateSet& cands,
                         ObjectiveKind kind);

/// One uniform draw in [0, 1) from 53 high bits; platform independent.
double uniform01(std::mt19937_64& rng);

/// Consumes exactly one draw from `rng`.
ObjectiveKind anneal_pick(std::uint64_t step, const AnnealSchedule& schedule,
                          std::mt19937_64& rng);

}  // namespace umcqa
