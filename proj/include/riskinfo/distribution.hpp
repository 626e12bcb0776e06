#pragma once

#include <span>
#include <vector>

#include "riskinfo/alphabet.hpp"

namespace riskinfo {

// Probability vector over a named finite alphabet.
//
// Two construction routes: the strict constructor accepts an existing
// probability vector and rejects anything off by more than 1e-9 from total
// mass 1; from_weights normalizes arbitrary non-negative weights.
class FiniteDistribution {
 public:
  FiniteDistribution(Alphabet alphabet, std::vector<double> probs);

  static FiniteDistribution from_weights(Alphabet alphabet,
                                         std::vector<double> weights);
  static FiniteDistribution uniform(Alphabet alphabet);
  static FiniteDistribution point_mass(Alphabet alphabet, std::size_t index);

  const Alphabet& alphabet() const { return alphabet_; }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::size_t size() const { return probs_.size(); }

 private:
  struct unchecked_t {};
  FiniteDistribution(unchecked_t, Alphabet alphabet, std::vector<double> probs)
      : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {}

  Alphabet alphabet_;
  std::vector<double> probs_;
};

}  // namespace riskinfo
