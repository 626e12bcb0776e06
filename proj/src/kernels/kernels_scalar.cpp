// Reference kernels. Plain loops, std::log2, Neumaier-compensated sums.
// Compiled with fp-contract off so the element-wise kernels stay bit-identical
// to the vector variants.

#include <cmath>
#include <cstddef>

#include "riskinfo/kernels.hpp"

namespace riskinfo::kernels {
namespace {

struct NeumaierAcc {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

double sum_scalar(const double* x, std::size_t n) {
  NeumaierAcc acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(x[i]);
  return acc.value();
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  NeumaierAcc acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

void scale_scalar(const double* x, double s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

double entropy_sum_scalar(const double* p, std::size_t n) {
  NeumaierAcc acc;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] > 0.0) acc.add(p[i] * std::log2(p[i]));
  }
  return -acc.value();
}

double kl_sum_scalar(const double* p, const double* q, std::size_t n) {
  NeumaierAcc acc;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] > 0.0) acc.add(p[i] * std::log2(p[i] / q[i]));
  }
  return acc.value();
}

void collision_margins_scalar(const double* v1, const double* v2, const double* a1,
                              const double* a2, const double* h2, const double* r2,
                              double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = v2[i] * h2[i] + (v1[i] * v1[i]) / (2.0 * a1[i]) - v2[i] * r2[i] -
           (v2[i] * v2[i]) / (2.0 * a2[i]);
  }
}

}  // namespace

const Ops& scalar() {
  static const Ops ops = {
      "scalar",      sum_scalar,    dot_scalar,
      scale_scalar,  axpy_scalar,   entropy_sum_scalar,
      kl_sum_scalar, collision_margins_scalar,
  };
  return ops;
}

}  // namespace riskinfo::kernels
