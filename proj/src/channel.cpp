#include "riskinfo/channel.hpp"

#include <cmath>
#include <string>

#include "riskinfo/errors.hpp"
#include "riskinfo/kernels.hpp"

namespace riskinfo {

namespace {
constexpr double kMassTolerance = 1e-9;

void check_shape(const Alphabet& input, const Alphabet& output, const Matrix& rows) {
  if (rows.rows() != input.size() || rows.cols() != output.size()) {
    throw_error(errc::length_mismatch, "channel matrix shape does not match alphabets");
  }
}
}  // namespace

Channel::Channel(Alphabet input, Alphabet output, Matrix rows)
    : input_(std::move(input)), output_(std::move(output)), rows_(std::move(rows)) {
  check_shape(input_, output_, rows_);
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < rows_.rows(); ++i) {
    for (std::size_t j = 0; j < rows_.cols(); ++j) {
      const double p = rows_.at(i, j);
      if (p < 0.0 || !std::isfinite(p)) {
        throw_error(errc::negative_weight, "channel entries must be finite and >= 0");
      }
    }
    const double total = k.sum(rows_.row(i), rows_.cols());
    if (std::abs(total - 1.0) > kMassTolerance) {
      throw_error(errc::not_normalized,
                  "channel row " + std::to_string(i) + " sums to " +
                      std::to_string(total) + ", expected 1");
    }
  }
}

Channel Channel::from_weights(Alphabet input, Alphabet output, Matrix weights) {
  check_shape(input, output, weights);
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < weights.rows(); ++i) {
    for (std::size_t j = 0; j < weights.cols(); ++j) {
      const double w = weights.at(i, j);
      if (w < 0.0 || !std::isfinite(w)) {
        throw_error(errc::negative_weight, "channel weights must be finite and >= 0");
      }
    }
    const double total = k.sum(weights.row(i), weights.cols());
    if (total == 0.0) {
      throw_error(errc::all_zero_weights,
                  "channel row " + std::to_string(i) + " has zero total weight");
    }
    for (std::size_t j = 0; j < weights.cols(); ++j) weights.at(i, j) /= total;
  }
  return Channel(unchecked_t{}, std::move(input), std::move(output), std::move(weights));
}

Channel Channel::identity(const Alphabet& alphabet) {
  Matrix rows(alphabet.size(), alphabet.size(), 0.0);
  for (std::size_t i = 0; i < alphabet.size(); ++i) rows.at(i, i) = 1.0;
  return Channel(unchecked_t{}, alphabet, alphabet, std::move(rows));
}

Channel Channel::constant(Alphabet input, Alphabet output, std::size_t target) {
  if (target >= output.size()) {
    throw_error(errc::length_mismatch, "constant channel target out of range");
  }
  Matrix rows(input.size(), output.size(), 0.0);
  for (std::size_t i = 0; i < input.size(); ++i) rows.at(i, target) = 1.0;
  return Channel(unchecked_t{}, std::move(input), std::move(output), std::move(rows));
}

FiniteDistribution Channel::apply(const FiniteDistribution& source) const {
  if (source.alphabet() != input_) {
    throw_error(errc::alphabet_mismatch, "source alphabet does not match channel input");
  }
  const auto& k = kernels::active();
  std::vector<double> out(output_.size(), 0.0);
  for (std::size_t i = 0; i < rows_.rows(); ++i) {
    if (source[i] != 0.0) k.axpy(source[i], rows_.row(i), out.data(), out.size());
  }
  return FiniteDistribution::from_weights(output_, std::move(out));
}

}  // namespace riskinfo
