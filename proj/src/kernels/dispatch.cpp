#include <atomic>

#include "pocover/kernels/mask_kernels.hpp"

namespace pocover::kernels {

namespace {

Isa detect() {
#if defined(POCOVER_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_available() { return detect() == Isa::avx2; }

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) return;
  selected().store(isa, std::memory_order_relaxed);
}

#if defined(POCOVER_HAVE_AVX2)
#define POCOVER_DISPATCH(fn, ...)                                   \
  return active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__)          \
                                   : scalar::fn(__VA_ARGS__)
#else
#define POCOVER_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

std::int64_t masked_sum(std::span<const std::int64_t> values, Mask mask) {
  POCOVER_DISPATCH(masked_sum, values, mask);
}

std::int64_t contained_weight(std::span<const Mask> sets,
                              std::span<const std::int64_t> weights, Mask s) {
  POCOVER_DISPATCH(contained_weight, sets, weights, s);
}

bool is_closed(std::span<const Mask> preds, Mask s) {
  POCOVER_DISPATCH(is_closed, preds, s);
}

}  // namespace pocover::kernels
