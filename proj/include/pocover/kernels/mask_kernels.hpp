#pragma once

// Bitmask kernels used by the exact oracles. Each has a scalar reference
// implementation and an AVX2 variant; the dispatching entry points pick one
// at runtime.

#include <cstdint>
#include <span>
#include <string_view>

namespace pocover::kernels {

using Mask = std::uint64_t;

enum class Isa { scalar, avx2 };

Isa active_isa();
std::string_view isa_name(Isa isa);
// Overrides runtime detection; requesting avx2 on a CPU without it is ignored.
void force_isa(Isa isa);
bool avx2_available();

// Sum of values[i] over the set bits i of mask. values.size() <= 64.
std::int64_t masked_sum(std::span<const std::int64_t> values, Mask mask);

// Sum of weights[j] over the sets j with sets[j] a subset of s.
std::int64_t contained_weight(std::span<const Mask> sets,
                              std::span<const std::int64_t> weights, Mask s);

// True iff every member v of s has preds[v] contained in s.
bool is_closed(std::span<const Mask> preds, Mask s);

namespace scalar {
std::int64_t masked_sum(std::span<const std::int64_t> values, Mask mask);
std::int64_t contained_weight(std::span<const Mask> sets,
                              std::span<const std::int64_t> weights, Mask s);
bool is_closed(std::span<const Mask> preds, Mask s);
}  // namespace scalar

namespace avx2 {
std::int64_t masked_sum(std::span<const std::int64_t> values, Mask mask);
std::int64_t contained_weight(std::span<const Mask> sets,
                              std::span<const std::int64_t> weights, Mask s);
bool is_closed(std::span<const Mask> preds, Mask s);
}  // namespace avx2

}  // namespace pocover::kernels
