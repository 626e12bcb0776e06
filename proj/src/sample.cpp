#include "riskinfo/sample.hpp"

#include <cmath>

#include "riskinfo/errors.hpp"

namespace riskinfo {

SampleBatch::SampleBatch(Alphabet row_alphabet, Alphabet col_alphabet)
    : row_(std::move(row_alphabet)), col_(std::move(col_alphabet)) {}

void SampleBatch::add(std::string_view row_label, std::string_view col_label) {
  pairs_.emplace_back(static_cast<std::uint32_t>(row_.index_of(row_label)),
                      static_cast<std::uint32_t>(col_.index_of(col_label)));
}

void SampleBatch::add_index(std::uint32_t row, std::uint32_t col) {
  if (row >= row_.size() || col >= col_.size()) {
    throw_error(errc::length_mismatch, "sample index out of alphabet range");
  }
  pairs_.emplace_back(row, col);
}

std::pair<JointDistribution, EstimateMeta> empirical_joint(const SampleBatch& samples,
                                                           BiasCorrection correction) {
  const std::size_t n = samples.count();
  if (n == 0) throw_error(errc::empty_sample, "empirical joint needs at least one sample");

  Matrix counts(samples.row_alphabet().size(), samples.col_alphabet().size(), 0.0);
  for (const auto& [r, c] : samples.pairs()) counts.at(r, c) += 1.0;

  std::size_t nonzero = 0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts.data()[i] > 0.0) ++nonzero;
    counts.data()[i] *= inv_n;
  }

  EstimateMeta meta;
  meta.count = n;
  if (correction == BiasCorrection::miller_madow) {
    meta.correction_bits = static_cast<double>(nonzero - 1) /
                           (2.0 * static_cast<double>(n) * std::log(2.0));
  }
  return {JointDistribution(samples.row_alphabet(), samples.col_alphabet(),
                            std::move(counts)),
          meta};
}

}  // namespace riskinfo
