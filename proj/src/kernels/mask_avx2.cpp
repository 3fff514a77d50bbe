// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "pocover/kernels/mask_kernels.hpp"

namespace pocover::kernels::avx2 {

namespace {

std::int64_t horizontal_sum(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

std::int64_t masked_sum(std::span<const std::int64_t> values, Mask mask) {
  const std::size_t n = values.size() < 64 ? values.size() : 64;
  const __m256i broadcast = _mm256_set1_epi64x(static_cast<long long>(mask));
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i bits = _mm256_set_epi64x(
        static_cast<long long>(Mask{1} << (i + 3)),
        static_cast<long long>(Mask{1} << (i + 2)),
        static_cast<long long>(Mask{1} << (i + 1)),
        static_cast<long long>(Mask{1} << i));
    const __m256i hit =
        _mm256_cmpeq_epi64(_mm256_and_si256(broadcast, bits), bits);
    const __m256i v = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(values.data() + i));
    acc = _mm256_add_epi64(acc, _mm256_and_si256(hit, v));
  }
  std::int64_t total = horizontal_sum(acc);
  for (; i < n; ++i)
    if ((mask >> i) & 1) total += values[i];
  return total;
}

std::int64_t contained_weight(std::span<const Mask> sets,
                              std::span<const std::int64_t> weights, Mask s) {
  const std::size_t n = sets.size();
  const __m256i sv = _mm256_set1_epi64x(static_cast<long long>(s));
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = zero;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256i e =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sets.data() + j));
    const __m256i outside = _mm256_andnot_si256(sv, e);
    const __m256i inside = _mm256_cmpeq_epi64(outside, zero);
    const __m256i w = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(weights.data() + j));
    acc = _mm256_add_epi64(acc, _mm256_and_si256(inside, w));
  }
  std::int64_t total = horizontal_sum(acc);
  for (; j < n; ++j)
    if ((sets[j] & ~s) == 0) total += weights[j];
  return total;
}

bool is_closed(std::span<const Mask> preds, Mask s) {
  const std::size_t n = preds.size() < 64 ? preds.size() : 64;
  const __m256i sv = _mm256_set1_epi64x(static_cast<long long>(s));
  std::size_t v = 0;
  for (; v + 4 <= n; v += 4) {
    const __m256i bits = _mm256_set_epi64x(
        static_cast<long long>(Mask{1} << (v + 3)),
        static_cast<long long>(Mask{1} << (v + 2)),
        static_cast<long long>(Mask{1} << (v + 1)),
        static_cast<long long>(Mask{1} << v));
    const __m256i member =
        _mm256_cmpeq_epi64(_mm256_and_si256(sv, bits), bits);
    const __m256i p =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(preds.data() + v));
    const __m256i missing = _mm256_andnot_si256(sv, p);
    if (!_mm256_testz_si256(member, missing)) return false;
  }
  for (; v < n; ++v)
    if (((s >> v) & 1) && (preds[v] & ~s)) return false;
  return true;
}

}  // namespace pocover::kernels::avx2
