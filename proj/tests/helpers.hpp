#pragma once

// Shared generators for the unit and property suites. Everything is seeded
// so failures replay exactly: channels draw rows by normalizing independent
// uniform(0,1) weights, the same scheme the library documents.

#include <cmath>
#include <string>
#include <vector>

#include "riskinfo/alphabet.hpp"
#include "riskinfo/channel.hpp"
#include "riskinfo/distribution.hpp"
#include "riskinfo/joint.hpp"
#include "riskinfo/matrix.hpp"
#include "riskinfo/rng.hpp"

namespace testutil {

inline riskinfo::Alphabet alpha(std::size_t n, const std::string& prefix = "s") {
  return riskinfo::Alphabet::indexed(prefix, n);
}

inline std::vector<double> random_weights(riskinfo::Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  for (auto& x : w) x = rng.next_double();
  return w;
}

inline riskinfo::FiniteDistribution random_distribution(riskinfo::Rng& rng,
                                                        riskinfo::Alphabet a) {
  auto w = random_weights(rng, a.size());
  bool all_zero = true;
  for (double x : w) all_zero &= (x == 0.0);
  if (all_zero) w[0] = 1.0;
  return riskinfo::FiniteDistribution::from_weights(std::move(a), std::move(w));
}

inline riskinfo::Channel random_channel(riskinfo::Rng& rng, riskinfo::Alphabet in,
                                        riskinfo::Alphabet out) {
  riskinfo::Matrix w(in.size(), out.size());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      w.at(i, j) = rng.next_double() + 1e-12;
    }
  }
  return riskinfo::Channel::from_weights(std::move(in), std::move(out), std::move(w));
}

inline riskinfo::JointDistribution random_joint(riskinfo::Rng& rng,
                                                riskinfo::Alphabet rows,
                                                riskinfo::Alphabet cols) {
  riskinfo::Matrix w(rows.size(), cols.size());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      w.at(i, j) = rng.next_double();
    }
  }
  return riskinfo::JointDistribution::from_weights(std::move(rows), std::move(cols),
                                                   std::move(w));
}

// Binary symmetric channel with flip probability p over {0,1}-style labels.
inline riskinfo::Channel bsc(double flip, const std::string& prefix = "s") {
  auto a = alpha(2, prefix);
  riskinfo::Matrix rows(2, 2);
  rows.at(0, 0) = 1.0 - flip;
  rows.at(0, 1) = flip;
  rows.at(1, 0) = flip;
  rows.at(1, 1) = 1.0 - flip;
  return riskinfo::Channel(a, a, std::move(rows));
}

// Independent test-side oracle for binary entropy, in bits.
inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace testutil
