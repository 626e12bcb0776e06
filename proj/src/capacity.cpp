#include "riskinfo/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "riskinfo/errors.hpp"
#include "riskinfo/joint.hpp"
#include "riskinfo/kernels.hpp"
#include "riskinfo/measures.hpp"

namespace riskinfo {

CapacityResult blahut_arimoto(const Channel& ch, double tolerance,
                              std::size_t max_iterations,
                              std::vector<double>* lower_bound_trace) {
  if (!(tolerance > 0.0)) {
    throw_error(errc::internal, "blahut_arimoto tolerance must be positive");
  }
  if (max_iterations == 0) {
    throw_error(errc::internal, "blahut_arimoto needs at least one iteration");
  }
  const auto& k = kernels::active();
  const std::size_t n = ch.input_alphabet().size();
  const std::size_t m = ch.output_alphabet().size();
  const Matrix& rows = ch.rows();

  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  std::vector<double> q(m);
  std::vector<double> divergence(n);  // D(W_i || q), zeroed where p_i == 0
  const double inf = std::numeric_limits<double>::infinity();

  double lower = 0.0;
  double gap = inf;
  double prev_lower = -inf;
  std::size_t iter = 0;

  while (iter < max_iterations) {
    ++iter;

    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] != 0.0) k.axpy(p[i], rows.row(i), q.data(), m);
    }

    double upper = -inf;
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] == 0.0) {
        // Mass can underflow to zero on hopeless inputs; they stay out of the
        // support but still bound capacity from above.
        divergence[i] = 0.0;
        bool unsupported = false;
        for (std::size_t j = 0; j < m; ++j) {
          if (rows.at(i, j) > 0.0 && q[j] == 0.0) {
            unsupported = true;
            break;
          }
        }
        upper = std::max(upper, unsupported ? inf : k.kl_sum(rows.row(i), q.data(), m));
      } else {
        divergence[i] = k.kl_sum(rows.row(i), q.data(), m);
        upper = std::max(upper, divergence[i]);
      }
    }

    lower = k.dot(p.data(), divergence.data(), n);
    if (lower < prev_lower - 1e-12) {
      throw_error(errc::internal,
                  "blahut_arimoto lower bound decreased: " + std::to_string(prev_lower) +
                      " -> " + std::to_string(lower));
    }
    prev_lower = lower;
    if (lower_bound_trace != nullptr) lower_bound_trace->push_back(lower);

    gap = upper - lower;
    if (gap < tolerance) {
      return {lower, FiniteDistribution::from_weights(ch.input_alphabet(), p), iter,
              gap, true};
    }

    // p_i <- p_i * 2^{D_i}, renormalized; shifting by the support max keeps
    // the exponentials from overflowing.
    double dmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] != 0.0) dmax = std::max(dmax, divergence[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] != 0.0) p[i] *= std::exp2(divergence[i] - dmax);
    }
    const double total = k.sum(p.data(), n);
    for (std::size_t i = 0; i < n; ++i) p[i] /= total;
  }

  return {lower, FiniteDistribution::from_weights(ch.input_alphabet(), p), iter, gap,
          false};
}

DeterministicMapper::DeterministicMapper(Alphabet input, Alphabet output,
                                         std::vector<std::uint32_t> m)
    : input_alphabet(std::move(input)), output_alphabet(std::move(output)),
      map(std::move(m)) {
  if (map.size() != input_alphabet.size()) {
    throw_error(errc::length_mismatch, "mapper table length does not match input alphabet");
  }
  for (std::uint32_t out : map) {
    if (out >= output_alphabet.size()) {
      throw_error(errc::length_mismatch, "mapper table entry out of output range");
    }
  }
}

Channel DeterministicMapper::to_channel() const {
  Matrix rows(input_alphabet.size(), output_alphabet.size(), 0.0);
  for (std::size_t i = 0; i < map.size(); ++i) rows.at(i, map[i]) = 1.0;
  return Channel(input_alphabet, output_alphabet, std::move(rows));
}

DeterministicCapacity deterministic_capacity(const DeterministicMapper& g,
                                             const FiniteDistribution& input) {
  if (input.alphabet() != g.input_alphabet) {
    throw_error(errc::alphabet_mismatch, "input law does not match mapper input alphabet");
  }
  const std::size_t n = g.input_alphabet.size();
  const std::size_t m = g.output_alphabet.size();
  Matrix mass(n, m, 0.0);
  for (std::size_t i = 0; i < n; ++i) mass.at(i, g.map[i]) = input[i];
  const JointDistribution joint(g.input_alphabet, g.output_alphabet, std::move(mass));

  DeterministicCapacity result;
  result.i_xy_bits = mutual_information(joint);
  result.h_y_bits = entropy(marginals(joint).second);
  if (std::abs(result.i_xy_bits - result.h_y_bits) > 1e-12) {
    throw_error(errc::internal,
                "I(X,Y) and H(Y) disagree for a deterministic mapper: " +
                    std::to_string(result.i_xy_bits) + " vs " +
                    std::to_string(result.h_y_bits));
  }
  return result;
}

double capacity_gap(const Channel& ch, const FiniteDistribution& input,
                    double tolerance) {
  const CapacityResult cap = blahut_arimoto(ch, tolerance);
  return cap.capacity_bits - mutual_information(joint_from(input, ch));
}

}  // namespace riskinfo
