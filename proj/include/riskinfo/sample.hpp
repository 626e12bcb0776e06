#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "riskinfo/alphabet.hpp"
#include "riskinfo/joint.hpp"

namespace riskinfo {

// Paired observations over two alphabets, stored as indices.
class SampleBatch {
 public:
  SampleBatch(Alphabet row_alphabet, Alphabet col_alphabet);

  void add(std::string_view row_label, std::string_view col_label);
  void add_index(std::uint32_t row, std::uint32_t col);

  std::size_t count() const { return pairs_.size(); }
  const Alphabet& row_alphabet() const { return row_; }
  const Alphabet& col_alphabet() const { return col_; }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs() const {
    return pairs_;
  }

 private:
  Alphabet row_;
  Alphabet col_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
};

enum class BiasCorrection { none, miller_madow };

struct EstimateMeta {
  std::size_t count = 0;
  // Additive Miller-Madow entropy bias term (K_nonzero - 1) / (2 N ln 2),
  // zero when no correction was requested. Consumers add it to plug-in
  // entropies: H_corrected = H_plugin + correction_bits.
  double correction_bits = 0.0;
};

// Plug-in joint (counts / N). Throws errc::empty_sample on an empty batch.
std::pair<JointDistribution, EstimateMeta> empirical_joint(
    const SampleBatch& samples, BiasCorrection correction = BiasCorrection::none);

}  // namespace riskinfo
