#include <bit>

#include "pocover/kernels/mask_kernels.hpp"

namespace pocover::kernels::scalar {

std::int64_t masked_sum(std::span<const std::int64_t> values, Mask mask) {
  std::int64_t total = 0;
  while (mask) {
    const int i = std::countr_zero(mask);
    mask &= mask - 1;
    if (static_cast<std::size_t>(i) < values.size()) total += values[i];
  }
  return total;
}

std::int64_t contained_weight(std::span<const Mask> sets,
                              std::span<const std::int64_t> weights, Mask s) {
  std::int64_t total = 0;
  for (std::size_t j = 0; j < sets.size(); ++j)
    if ((sets[j] & ~s) == 0) total += weights[j];
  return total;
}

bool is_closed(std::span<const Mask> preds, Mask s) {
  for (std::size_t v = 0; v < preds.size() && v < 64; ++v)
    if (((s >> v) & 1) && (preds[v] & ~s)) return false;
  return true;
}

}  // namespace pocover::kernels::scalar
