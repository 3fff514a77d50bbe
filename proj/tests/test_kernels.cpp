#include <vector>

#include "doctest.h"
#include "pocover/instance_gen.hpp"
#include "pocover/kernels/mask_kernels.hpp"

using namespace pocover;
using namespace pocover::kernels;

TEST_SUITE("kernels") {

TEST_CASE("scalar kernels on small inputs") {
  const std::vector<std::int64_t> v{3, 5, 7};
  CHECK(scalar::masked_sum(v, 0b101) == 10);
  CHECK(scalar::masked_sum(v, 0) == 0);
  const std::vector<Mask> sets{0b011, 0b110};
  const std::vector<std::int64_t> w{2, 9};
  CHECK(scalar::contained_weight(sets, w, 0b011) == 2);
  CHECK(scalar::contained_weight(sets, w, 0b111) == 11);
  // 1 needs 0; 2 needs nothing.
  const std::vector<Mask> preds{0, 0b001, 0};
  CHECK(scalar::is_closed(preds, 0b011));
  CHECK_FALSE(scalar::is_closed(preds, 0b010));
  CHECK(scalar::is_closed(preds, 0));
}

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!avx2_available()) return;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    const auto n = static_cast<std::size_t>(rng.uniform(0, 64));
    std::vector<std::int64_t> values(n);
    std::vector<Mask> sets(n), preds(n);
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = rng.uniform(-1000, 1000);
      sets[i] = static_cast<Mask>(rng.uniform(0, INT64_MAX)) &
                static_cast<Mask>(rng.uniform(0, INT64_MAX));
      preds[i] = rng.chance_permille(500) ? 0 : Mask{1} << rng.uniform(0, 63);
    }
    const Mask s = static_cast<Mask>(rng.uniform(0, INT64_MAX)) |
                   (rng.chance_permille(500) ? Mask{1} << 63 : 0);
    INFO("seed " << seed);
    CHECK(avx2::masked_sum(values, s) == scalar::masked_sum(values, s));
    CHECK(avx2::contained_weight(sets, values, s) ==
          scalar::contained_weight(sets, values, s));
    CHECK(avx2::is_closed(preds, s) == scalar::is_closed(preds, s));
  }
}

TEST_CASE("dispatch honours force_isa") {
  const Isa before = active_isa();
  force_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  CHECK(isa_name(Isa::scalar) == "scalar");
  const std::vector<std::int64_t> v{1, 2, 4};
  CHECK(masked_sum(v, 0b110) == 6);
  force_isa(Isa::avx2);
  CHECK(active_isa() == (avx2_available() ? Isa::avx2 : Isa::scalar));
  CHECK(masked_sum(v, 0b110) == 6);
  force_isa(before);
}

}  // TEST_SUITE
