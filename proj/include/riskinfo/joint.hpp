#pragma once

#include <utility>

#include "riskinfo/alphabet.hpp"
#include "riskinfo/channel.hpp"
#include "riskinfo/distribution.hpp"
#include "riskinfo/matrix.hpp"

namespace riskinfo {

// Joint probability mass P(row, col) over a pair of alphabets.
class JointDistribution {
 public:
  // Strict: entries >= 0, total mass within 1e-9 of 1.
  JointDistribution(Alphabet row_alphabet, Alphabet col_alphabet, Matrix mass);

  static JointDistribution from_weights(Alphabet row_alphabet, Alphabet col_alphabet,
                                        Matrix weights);

  const Alphabet& row_alphabet() const { return row_; }
  const Alphabet& col_alphabet() const { return col_; }
  const Matrix& mass() const { return mass_; }
  double at(std::size_t i, std::size_t j) const { return mass_.at(i, j); }

  JointDistribution transposed() const;

 private:
  Alphabet row_;
  Alphabet col_;
  Matrix mass_;
};

// P(input, output) = P(input) * P(output | input).
JointDistribution joint_from(const FiniteDistribution& source, const Channel& channel);

// Row-sum and column-sum laws.
std::pair<FiniteDistribution, FiniteDistribution> marginals(const JointDistribution& j);

}  // namespace riskinfo
