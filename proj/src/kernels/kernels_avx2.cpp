// AVX2 kernels. Compiled with -mavx2 -mfma and fp-contract off; only reached
// after a runtime CPU check (see dispatch.cpp).
//
// log2 is evaluated in-register: split off the exponent, center the mantissa
// around 1 at sqrt(2), then an odd atanh series in s = (m-1)/(m+1). Truncation
// error is below 1e-18, so accuracy is a few ulps like libm. Reductions keep
// four Neumaier-compensated lanes and merge them in a fixed order, which keeps
// long sums (collision grids reach 1e6 cells) accurate to ~1e-16 while staying
// deterministic. Element-wise kernels mirror the scalar op order exactly and
// are bit-identical to the reference; the equivalence tests assert both.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cfloat>
#include <cmath>
#include <cstddef>

#include "riskinfo/kernels.hpp"

namespace riskinfo::kernels {
namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;
// (2/ln2)/(2k+1): coefficients of 2*atanh(s)/ln2 = log2(m).
constexpr double kAtanhCoef[11] = {
    2.0 / kLn2,          2.0 / (3.0 * kLn2),  2.0 / (5.0 * kLn2),
    2.0 / (7.0 * kLn2),  2.0 / (9.0 * kLn2),  2.0 / (11.0 * kLn2),
    2.0 / (13.0 * kLn2), 2.0 / (15.0 * kLn2), 2.0 / (17.0 * kLn2),
    2.0 / (19.0 * kLn2), 2.0 / (21.0 * kLn2),
};

// log2 of four positive normal doubles. Callers clamp to DBL_MIN first.
inline __m256d log2_pd(__m256d x) {
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i exp_one = _mm256_set1_epi64x(0x3FF0000000000000LL);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256d two52 = _mm256_set1_pd(4503599627370496.0);
  const __m256d one = _mm256_set1_pd(1.0);

  const __m256i bits = _mm256_castpd_si256(x);

  // Biased exponent to double via the 2^52 trick (values fit the mantissa).
  const __m256i ebits = _mm256_srli_epi64(bits, 52);
  const __m256d biased =
      _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(ebits, magic)), two52);
  __m256d e = _mm256_sub_pd(biased, _mm256_set1_pd(1023.0));

  // Mantissa in [1,2), then fold into [sqrt2/2, sqrt2] so s stays small.
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), exp_one));
  const __m256d gt = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), gt);
  e = _mm256_add_pd(e, _mm256_and_pd(gt, one));

  const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);

  __m256d poly = _mm256_set1_pd(kAtanhCoef[10]);
  for (int k = 9; k >= 0; --k) {
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(kAtanhCoef[k]));
  }
  return _mm256_fmadd_pd(s, poly, e);
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// Four independent Neumaier lanes; merge() folds them lane 0..3, sums first.
struct NeumaierAcc4 {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  inline void add(__m256d x) {
    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d big = _mm256_cmp_pd(abs_pd(sum), abs_pd(x), _CMP_GE_OQ);
    const __m256d d_sum_big = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    const __m256d d_x_big = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(d_x_big, d_sum_big, big));
    sum = t;
  }

  double merge_with_tail(const double* tail_terms, std::size_t tail_n) const {
    double s[4];
    double c[4];
    _mm256_storeu_pd(s, sum);
    _mm256_storeu_pd(c, comp);
    double acc = 0.0, acomp = 0.0;
    auto push = [&](double x) {
      const double t = acc + x;
      if (std::abs(acc) >= std::abs(x)) {
        acomp += (acc - t) + x;
      } else {
        acomp += (x - t) + acc;
      }
      acc = t;
    };
    for (int i = 0; i < 4; ++i) push(s[i]);
    for (int i = 0; i < 4; ++i) push(c[i]);
    for (std::size_t i = 0; i < tail_n; ++i) push(tail_terms[i]);
    return acc + acomp;
  }
};

double sum_avx2(const double* x, std::size_t n) {
  NeumaierAcc4 acc;
  const std::size_t head = n & ~std::size_t{3};
  for (std::size_t i = 0; i < head; i += 4) acc.add(_mm256_loadu_pd(x + i));
  return acc.merge_with_tail(x + head, n - head);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  NeumaierAcc4 acc;
  const std::size_t head = n & ~std::size_t{3};
  for (std::size_t i = 0; i < head; i += 4) {
    // Plain multiply (no FMA) so per-element products match the reference.
    acc.add(_mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double tail[3];
  const std::size_t tail_n = n - head;
  for (std::size_t i = 0; i < tail_n; ++i) tail[i] = a[head + i] * b[head + i];
  return acc.merge_with_tail(tail, tail_n);
}

void scale_avx2(const double* x, double s, double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  const std::size_t head = n & ~std::size_t{3};
  for (std::size_t i = 0; i < head; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), vs));
  }
  for (std::size_t i = head; i < n; ++i) out[i] = x[i] * s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const std::size_t head = n & ~std::size_t{3};
  for (std::size_t i = 0; i < head; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (std::size_t i = head; i < n; ++i) y[i] = y[i] + a * x[i];
}

double entropy_sum_avx2(const double* p, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d tiny = _mm256_set1_pd(DBL_MIN);
  NeumaierAcc4 acc;
  const std::size_t head = n & ~std::size_t{3};
  for (std::size_t i = 0; i < head; i += 4) {
    const __m256d pv = _mm256_loadu_pd(p + i);
    const __m256d mask = _mm256_cmp_pd(pv, zero, _CMP_GT_OQ);
    const __m256d lg = log2_pd(_mm256_max_pd(pv, tiny));
    acc.add(_mm256_and_pd(_mm256_mul_pd(pv, lg), mask));
  }
  double tail[3];
  std::size_t tail_n = 0;
  for (std::size_t i = head; i < n; ++i) {
    if (p[i] > 0.0) tail[tail_n++] = p[i] * std::log2(p[i]);
  }
  return -acc.merge_with_tail(tail, tail_n);
}

double kl_sum_avx2(const double* p, const double* q, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d tiny = _mm256_set1_pd(DBL_MIN);
  NeumaierAcc4 acc;
  const std::size_t head = n & ~std::size_t{3};
  for (std::size_t i = 0; i < head; i += 4) {
    const __m256d pv = _mm256_loadu_pd(p + i);
    const __m256d qv = _mm256_loadu_pd(q + i);
    const __m256d mask = _mm256_cmp_pd(pv, zero, _CMP_GT_OQ);
    const __m256d ratio = _mm256_max_pd(_mm256_div_pd(pv, qv), tiny);
    acc.add(_mm256_and_pd(_mm256_mul_pd(pv, log2_pd(ratio)), mask));
  }
  double tail[3];
  std::size_t tail_n = 0;
  for (std::size_t i = head; i < n; ++i) {
    if (p[i] > 0.0) tail[tail_n++] = p[i] * std::log2(p[i] / q[i]);
  }
  return acc.merge_with_tail(tail, tail_n);
}

void collision_margins_avx2(const double* v1, const double* v2, const double* a1,
                            const double* a2, const double* h2, const double* r2,
                            double* y, std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  const std::size_t head = n & ~std::size_t{3};
  for (std::size_t i = 0; i < head; i += 4) {
    const __m256d w1 = _mm256_loadu_pd(v1 + i);
    const __m256d w2 = _mm256_loadu_pd(v2 + i);
    const __m256d b1 = _mm256_loadu_pd(a1 + i);
    const __m256d b2 = _mm256_loadu_pd(a2 + i);
    const __m256d gap = _mm256_loadu_pd(h2 + i);
    const __m256d react = _mm256_loadu_pd(r2 + i);
    // Same op order as the reference, no FMA: results are bit-identical.
    const __m256d t1 = _mm256_mul_pd(w2, gap);
    const __m256d t2 = _mm256_div_pd(_mm256_mul_pd(w1, w1), _mm256_mul_pd(two, b1));
    const __m256d t3 = _mm256_mul_pd(w2, react);
    const __m256d t4 = _mm256_div_pd(_mm256_mul_pd(w2, w2), _mm256_mul_pd(two, b2));
    const __m256d res =
        _mm256_sub_pd(_mm256_sub_pd(_mm256_add_pd(t1, t2), t3), t4);
    _mm256_storeu_pd(y + i, res);
  }
  for (std::size_t i = head; i < n; ++i) {
    y[i] = v2[i] * h2[i] + (v1[i] * v1[i]) / (2.0 * a1[i]) - v2[i] * r2[i] -
           (v2[i] * v2[i]) / (2.0 * a2[i]);
  }
}

}  // namespace

const Ops* avx2() {
#if defined(__GNUC__) || defined(__clang__)
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  static const bool supported = false;
#endif
  if (!supported) return nullptr;
  static const Ops ops = {
      "avx2",      sum_avx2,  dot_avx2,         scale_avx2,
      axpy_avx2,   entropy_sum_avx2, kl_sum_avx2,
      collision_margins_avx2,
  };
  return &ops;
}

}  // namespace riskinfo::kernels

#else

#include "riskinfo/kernels.hpp"

namespace riskinfo::kernels {
const Ops* avx2() { return nullptr; }
}  // namespace riskinfo::kernels

#endif
