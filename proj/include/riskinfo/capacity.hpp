#pragma once

#include <cstdint>
#include <vector>

#include "riskinfo/channel.hpp"
#include "riskinfo/distribution.hpp"

namespace riskinfo {

struct CapacityResult {
  double capacity_bits = 0.0;        // achieved I at optimal_input
  FiniteDistribution optimal_input;
  std::size_t iterations = 0;
  double gap_bits = 0.0;             // final upper - lower bound difference
  bool converged = false;
};

// Alternating-maximization channel capacity. Stops when the per-iteration
// upper/lower capacity bounds close below `tolerance`; otherwise returns the
// best iterate with `converged == false` and the residual gap recorded.
// `lower_bound_trace`, when given, receives the lower bound after each
// iteration (it is non-decreasing; the solver checks that as it goes).
CapacityResult blahut_arimoto(const Channel& ch, double tolerance = 1e-9,
                              std::size_t max_iterations = 100000,
                              std::vector<double>* lower_bound_trace = nullptr);

// Total function between alphabets, the noiseless special case of a channel.
struct DeterministicMapper {
  Alphabet input_alphabet;
  Alphabet output_alphabet;
  std::vector<std::uint32_t> map;  // map[i] = output index of input i

  DeterministicMapper(Alphabet input, Alphabet output, std::vector<std::uint32_t> m);

  Channel to_channel() const;
};

struct DeterministicCapacity {
  double i_xy_bits = 0.0;
  double h_y_bits = 0.0;
};

// For a function Y = g(X), I(X;Y) and H(Y) coincide; computed from the
// induced joint and cross-checked to 1e-12 before returning.
DeterministicCapacity deterministic_capacity(const DeterministicMapper& g,
                                             const FiniteDistribution& input);

// Capacity of `ch` minus the rate the given input law achieves.
double capacity_gap(const Channel& ch, const FiniteDistribution& input,
                    double tolerance = 1e-9);

}  // namespace riskinfo
