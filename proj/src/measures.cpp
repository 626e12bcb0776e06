#include "riskinfo/measures.hpp"

#include <algorithm>
#include <vector>

#include "riskinfo/errors.hpp"
#include "riskinfo/kernels.hpp"

namespace riskinfo {

double entropy(std::span<const double> probs) {
  return kernels::active().entropy_sum(probs.data(), probs.size());
}

double entropy(const FiniteDistribution& d) { return entropy(d.probs()); }

double joint_entropy(const JointDistribution& j) {
  return kernels::active().entropy_sum(j.mass().data(), j.mass().size());
}

double conditional_entropy(const JointDistribution& j) {
  const auto [row, col] = marginals(j);
  const double h = joint_entropy(j) - entropy(row);
  return std::max(h, 0.0);
}

double mutual_information(const JointDistribution& j) {
  const auto& k = kernels::active();
  const auto [row, col] = marginals(j);
  const Matrix& mass = j.mass();
  const std::size_t cols = mass.cols();

  // Row by row: I = sum_i KL(mass_i || p(row=i) * colmarginal).
  std::vector<double> scratch(cols);
  double total = 0.0;
  for (std::size_t i = 0; i < mass.rows(); ++i) {
    const double r = row[i];
    if (r == 0.0) continue;
    k.scale(col.probs().data(), r, scratch.data(), cols);
    total += k.kl_sum(mass.row(i), scratch.data(), cols);
  }
  return std::max(total, 0.0);
}

double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q) {
  if (p.alphabet() != q.alphabet()) {
    throw_error(errc::alphabet_mismatch, "KL divergence requires a common alphabet");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && q[i] == 0.0) {
      throw_error(errc::support_violation,
                  "KL divergence undefined: p has mass where q is zero (symbol '" +
                      p.alphabet().label(i) + "')");
    }
  }
  return kernels::active().kl_sum(p.probs().data(), q.probs().data(), p.size());
}

}  // namespace riskinfo
