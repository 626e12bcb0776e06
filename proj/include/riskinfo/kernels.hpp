#pragma once

#include <cstddef>
#include <string_view>

namespace riskinfo::kernels {

// Data-parallel inner loops behind the information measures and the collision
// sweep. Two implementations share this table: a scalar reference and an AVX2
// variant picked at runtime. All reductions use compensated (Neumaier)
// accumulation so results stay accurate to a few ulps independent of length.
//
// Conventions:
//   entropy_sum  returns  -sum_i p[i]*log2(p[i])   (entries <= 0 contribute 0)
//   kl_sum       returns   sum_i p[i]*log2(p[i]/q[i])   (p[i] <= 0 skipped;
//                caller guarantees q[i] > 0 wherever p[i] > 0)
//   collision_margins evaluates, element-wise,
//                y = v2*h2 + v1^2/(2*a1) - v2*r2 - v2^2/(2*a2)
//   scale, axpy and collision_margins are element-wise and bit-identical
//   across implementations; the reductions may differ in the last ulps.
struct Ops {
  const char* name;
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*scale)(const double* x, double s, double* out, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  double (*entropy_sum)(const double* p, std::size_t n);
  double (*kl_sum)(const double* p, const double* q, std::size_t n);
  void (*collision_margins)(const double* v1, const double* v2, const double* a1,
                            const double* a2, const double* h2, const double* r2,
                            double* y, std::size_t n);
};

const Ops& scalar();

// nullptr when the binary lacks AVX2 support or the CPU does.
const Ops* avx2();

// The implementation every consumer calls through. Resolved once:
// RISKINFO_KERNELS=scalar|avx2 overrides, otherwise best available.
const Ops& active();

// Force a specific implementation ("scalar", "avx2", "auto").
// Returns false if it is not available on this machine.
bool select(std::string_view name);

}  // namespace riskinfo::kernels
