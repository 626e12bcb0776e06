#include "riskinfo/joint.hpp"

#include <cmath>
#include <string>

#include "riskinfo/errors.hpp"
#include "riskinfo/kernels.hpp"

namespace riskinfo {

namespace {
constexpr double kMassTolerance = 1e-9;

void check_entries(const Matrix& mass) {
  for (std::size_t i = 0; i < mass.size(); ++i) {
    const double p = mass.data()[i];
    if (p < 0.0 || !std::isfinite(p)) {
      throw_error(errc::negative_weight, "joint mass entries must be finite and >= 0");
    }
  }
}
}  // namespace

JointDistribution::JointDistribution(Alphabet row_alphabet, Alphabet col_alphabet,
                                     Matrix mass)
    : row_(std::move(row_alphabet)), col_(std::move(col_alphabet)), mass_(std::move(mass)) {
  if (mass_.rows() != row_.size() || mass_.cols() != col_.size()) {
    throw_error(errc::length_mismatch, "joint mass shape does not match alphabets");
  }
  check_entries(mass_);
  const double total = kernels::active().sum(mass_.data(), mass_.size());
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw_error(errc::not_normalized,
                "joint mass sums to " + std::to_string(total) + ", expected 1");
  }
}

JointDistribution JointDistribution::from_weights(Alphabet row_alphabet,
                                                  Alphabet col_alphabet, Matrix weights) {
  if (weights.rows() != row_alphabet.size() || weights.cols() != col_alphabet.size()) {
    throw_error(errc::length_mismatch, "joint mass shape does not match alphabets");
  }
  check_entries(weights);
  const double total = kernels::active().sum(weights.data(), weights.size());
  if (total == 0.0) throw_error(errc::all_zero_weights, "joint weights sum to zero");
  for (std::size_t i = 0; i < weights.size(); ++i) weights.data()[i] /= total;
  return JointDistribution(std::move(row_alphabet), std::move(col_alphabet),
                           std::move(weights));
}

JointDistribution JointDistribution::transposed() const {
  Matrix t(mass_.cols(), mass_.rows());
  for (std::size_t i = 0; i < mass_.rows(); ++i) {
    for (std::size_t j = 0; j < mass_.cols(); ++j) t.at(j, i) = mass_.at(i, j);
  }
  return JointDistribution(col_, row_, std::move(t));
}

JointDistribution joint_from(const FiniteDistribution& source, const Channel& channel) {
  if (source.alphabet() != channel.input_alphabet()) {
    throw_error(errc::alphabet_mismatch,
                "source alphabet does not match channel input alphabet");
  }
  const auto& k = kernels::active();
  const std::size_t n = source.size();
  const std::size_t m = channel.output_alphabet().size();
  Matrix mass(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    k.scale(channel.rows().row(i), source[i], mass.row(i), m);
  }
  return JointDistribution(source.alphabet(), channel.output_alphabet(), std::move(mass));
}

std::pair<FiniteDistribution, FiniteDistribution> marginals(const JointDistribution& j) {
  const auto& k = kernels::active();
  const Matrix& mass = j.mass();
  std::vector<double> row_sums(mass.rows());
  std::vector<double> col_sums(mass.cols(), 0.0);
  for (std::size_t i = 0; i < mass.rows(); ++i) {
    row_sums[i] = k.sum(mass.row(i), mass.cols());
    k.axpy(1.0, mass.row(i), col_sums.data(), col_sums.size());
  }
  return {FiniteDistribution::from_weights(j.row_alphabet(), std::move(row_sums)),
          FiniteDistribution::from_weights(j.col_alphabet(), std::move(col_sums))};
}

}  // namespace riskinfo
