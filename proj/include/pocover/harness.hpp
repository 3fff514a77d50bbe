#pragma once

// Property verification: runs the approximation and the exact oracles side
// by side and records every checked invariant.

#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pocover/ct_cover.hpp"
#include "pocover/instance_gen.hpp"
#include "pocover/reductions.hpp"
#include "pocover/serialize.hpp"

namespace pocover {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

class CheckList {
 public:
  void expect(std::string name, bool ok, std::string detail = {}) {
    checks_.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
  }
  const std::vector<Check>& items() const { return checks_; }
  bool all_pass() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }

 private:
  std::vector<Check> checks_;
};

struct VerifyReport {
  std::string fingerprint;
  // Infeasible instances and oracle guard hits are reported, not failed.
  std::optional<std::string> error;
  std::size_t alg_cardinality = 0;
  std::size_t forced_sets = 0;
  std::size_t loop_sets = 0;
  bool residual = false;
  std::optional<std::size_t> exact_cardinality;          // original instance
  std::optional<std::size_t> exact_reduced_cardinality;  // after preprocessing
  Bounds bounds;
  std::optional<double> ratio;
  CheckList checks;
  double alg_ms = 0;
  double exact_ms = 0;

  bool passed() const { return checks.all_pass(); }
};

VerifyReport verify_one(const CtInstance& instance, bool with_exact);

struct RoundtripReport {
  ReductionKind kind = ReductionKind::bpcc_to_ct;
  std::string fingerprint;
  std::optional<std::string> skipped;
  Parameters values;
  CheckList checks;

  bool passed() const { return checks.all_pass(); }
};

// Source kinds: bpcc for bpcc_to_ct, dksh for dksh_to_rcp, rcp for
// rcp_to_dksh and degree_augment, arity-2 dksh for dks_to_urcp (the whole
// pipeline).
RoundtripReport roundtrip_one(ReductionKind kind, const Instance& source);

Json to_json(const VerifyReport& report);
Json to_json(const RoundtripReport& report);

// Applies fn to every input on up to `jobs` threads; output order matches
// input order.
template <class In, class Fn>
auto parallel_map(const std::vector<In>& inputs, unsigned jobs, Fn fn)
    -> std::vector<decltype(fn(inputs.front()))> {
  using Out = decltype(fn(inputs.front()));
  std::vector<std::optional<Out>> slots(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < inputs.size();)
      slots[i].emplace(fn(inputs[i]));
  };
  jobs = std::max(1u, std::min<unsigned>(
                          jobs, static_cast<unsigned>(inputs.size())));
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  pool.clear();
  std::vector<Out> out;
  out.reserve(inputs.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<VerifyReport> run_verify(const std::vector<CtInstance>& instances,
                                     bool with_exact, unsigned jobs);
std::vector<RoundtripReport> run_roundtrip(ReductionKind kind,
                                           const std::vector<Instance>& sources,
                                           unsigned jobs);

}  // namespace pocover
