#pragma once

#include <span>

#include "riskinfo/distribution.hpp"
#include "riskinfo/joint.hpp"

namespace riskinfo {

// All measures are in bits (log base 2) with the 0*log2(0) = 0 convention.

double entropy(std::span<const double> probs);
double entropy(const FiniteDistribution& d);

// Entropy of the full joint law H(row, col).
double joint_entropy(const JointDistribution& j);

// H(col | row) = H(joint) - H(row marginal); non-negative.
double conditional_entropy(const JointDistribution& j);

// I(row; col) = sum p(x,y) log2( p(x,y) / (p(x) p(y)) ); zero-mass terms skipped.
double mutual_information(const JointDistribution& j);

// D(p || q); throws errc::support_violation when p(i) > 0 and q(i) == 0.
double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q);

}  // namespace riskinfo
