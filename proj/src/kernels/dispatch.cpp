#include <atomic>
#include <cstdlib>
#include <string_view>

#include "riskinfo/kernels.hpp"

namespace riskinfo::kernels {
namespace {

const Ops* resolve_default() {
  if (const char* env = std::getenv("RISKINFO_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar();
    if (want == "avx2" && avx2()) return avx2();
    // Unknown or unavailable values fall through to auto.
  }
  if (const Ops* v = avx2()) return v;
  return &scalar();
}

std::atomic<const Ops*>& active_slot() {
  static std::atomic<const Ops*> slot{resolve_default()};
  return slot;
}

}  // namespace

const Ops& active() { return *active_slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  if (name == "scalar") {
    active_slot().store(&scalar(), std::memory_order_release);
    return true;
  }
  if (name == "avx2") {
    if (const Ops* v = avx2()) {
      active_slot().store(v, std::memory_order_release);
      return true;
    }
    return false;
  }
  if (name == "auto") {
    active_slot().store(resolve_default(), std::memory_order_release);
    return true;
  }
  return false;
}

}  // namespace riskinfo::kernels
