#pragma once

#include <span>

#include "riskinfo/alphabet.hpp"
#include "riskinfo/distribution.hpp"
#include "riskinfo/matrix.hpp"

namespace riskinfo {

// Row-stochastic conditional probability matrix P(output | input).
class Channel {
 public:
  // Strict: every row must already sum to 1 within 1e-9.
  Channel(Alphabet input, Alphabet output, Matrix rows);

  // Row-normalizing construction from non-negative weights.
  static Channel from_weights(Alphabet input, Alphabet output, Matrix weights);
  static Channel identity(const Alphabet& alphabet);
  // Every input maps to `target` with probability 1.
  static Channel constant(Alphabet input, Alphabet output, std::size_t target);

  const Alphabet& input_alphabet() const { return input_; }
  const Alphabet& output_alphabet() const { return output_; }
  const Matrix& rows() const { return rows_; }
  std::span<const double> row(std::size_t i) const { return rows_.row_span(i); }

  // Output law of `source` pushed through the channel.
  FiniteDistribution apply(const FiniteDistribution& source) const;

 private:
  struct unchecked_t {};
  Channel(unchecked_t, Alphabet input, Alphabet output, Matrix rows)
      : input_(std::move(input)), output_(std::move(output)), rows_(std::move(rows)) {}

  Alphabet input_;
  Alphabet output_;
  Matrix rows_;
};

}  // namespace riskinfo
