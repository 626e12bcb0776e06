#include "riskinfo/distribution.hpp"

#include <cmath>

#include "riskinfo/errors.hpp"
#include "riskinfo/kernels.hpp"

namespace riskinfo {

namespace {
constexpr double kMassTolerance = 1e-9;
}

FiniteDistribution::FiniteDistribution(Alphabet alphabet, std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
  if (probs_.size() != alphabet_.size()) {
    throw_error(errc::length_mismatch,
                "probability vector length does not match alphabet size");
  }
  for (double p : probs_) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw_error(errc::negative_weight, "probabilities must be finite and >= 0");
    }
  }
  const double total = kernels::active().sum(probs_.data(), probs_.size());
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw_error(errc::not_normalized,
                "probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

FiniteDistribution FiniteDistribution::from_weights(Alphabet alphabet,
                                                    std::vector<double> weights) {
  if (weights.size() != alphabet.size()) {
    throw_error(errc::length_mismatch,
                "weight vector length does not match alphabet size");
  }
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw_error(errc::negative_weight, "weights must be finite and >= 0");
    }
  }
  const double total = kernels::active().sum(weights.data(), weights.size());
  if (total == 0.0) {
    throw_error(errc::all_zero_weights, "weights sum to zero");
  }
  for (double& w : weights) w /= total;
  return FiniteDistribution(unchecked_t{}, std::move(alphabet), std::move(weights));
}

FiniteDistribution FiniteDistribution::uniform(Alphabet alphabet) {
  const std::size_t n = alphabet.size();
  return FiniteDistribution(unchecked_t{}, std::move(alphabet),
                            std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FiniteDistribution FiniteDistribution::point_mass(Alphabet alphabet,
                                                  std::size_t index) {
  if (index >= alphabet.size()) {
    throw_error(errc::length_mismatch, "point mass index out of range");
  }
  std::vector<double> probs(alphabet.size(), 0.0);
  probs[index] = 1.0;
  return FiniteDistribution(unchecked_t{}, std::move(alphabet), std::move(probs));
}

}  // namespace riskinfo
