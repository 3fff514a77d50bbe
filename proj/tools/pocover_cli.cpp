// pocover: generate, solve, reduce and verify precedence-constrained covering
// instances. Every subcommand writes one JSON document per line.

#include <array>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "pocover/harness.hpp"
#include "pocover/kernels/mask_kernels.hpp"

using namespace pocover;

namespace {

struct SourceOptions {
  std::string in;
  std::string kind;
  int n = 10;
  Weight k = 6;
  std::uint64_t seed = 1;
  int count = 1;
  ShapeParams shape;
  int max_children = 0;
  Weight size_max = -1;
  int edges = -1;
  int clusters = -1;
};

struct OutputOptions {
  std::string out;
  std::string dot;
  unsigned jobs = 1;
};

// An input instance plus the seed that produced it, when generated.
struct Item {
  Instance instance;
  std::optional<std::uint64_t> seed;
};

void add_source(CLI::App* app, SourceOptions& s, const std::string& default_kind) {
  s.kind = default_kind;
  app->add_option("--in", s.in, "read instances from a JSONL file ('-' for stdin)");
  app->add_option("--kind", s.kind, "generator kind")
      ->check(CLI::IsMember({"out_tree", "bp_star", "dag", "digraph", "hypergraph",
                             "bpcc", "graph"}));
  app->add_option("--n", s.n, "vertex (or item) count")->check(CLI::PositiveNumber);
  app->add_option("--k", s.k, "capacity or budget")->check(CLI::PositiveNumber);
  app->add_option("--seed", s.seed, "seed of the first instance; instance i uses seed+i");
  app->add_option("--count", s.count, "number of instances to generate")
      ->check(CLI::NonNegativeNumber);
  app->add_flag("--boundary", s.shape.boundary, "allow root paths of weight exactly k");
  app->add_option("--max-children", s.max_children, "out-tree fan-out cap");
  app->add_option("--size-min", s.shape.size_min, "smallest vertex size");
  app->add_option("--size-max", s.size_max, "largest vertex size (default k)");
  app->add_option("--edge-permille", s.shape.edge_permille, "arc probability in 1/1000")
      ->check(CLI::Range(0, 1000));
  app->add_option("--arity-min", s.shape.arity_min, "smallest hyperedge");
  app->add_option("--arity-max", s.shape.arity_max, "largest hyperedge");
  app->add_option("--edges", s.edges, "hyperedge or graph edge count");
  app->add_option("--clusters", s.clusters, "cluster count for bpcc");
  app->add_option("--weight-max", s.shape.weight_max, "largest profit or weight");
}

void add_output(CLI::App* app, OutputOptions& o) {
  app->add_option("--out", o.out, "write results here instead of stdout");
  app->add_option("--emit-dot", o.dot, "write a DOT rendering of every input here");
  app->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

std::vector<Item> load(const SourceOptions& s) {
  std::vector<Item> items;
  if (!s.in.empty()) {
    std::vector<Json> docs;
    if (s.in == "-") {
      docs = read_documents(std::cin);
    } else {
      std::ifstream f(s.in);
      if (!f) throw InputError("cannot open " + s.in);
      docs = read_documents(f);
    }
    for (const auto& d : docs) items.push_back({instance_from_json(d), std::nullopt});
    return items;
  }
  GenSpec spec{*parse_gen_kind(s.kind), s.n, s.k, s.seed, s.shape};
  if (s.max_children > 0) spec.shape.max_children = s.max_children;
  if (s.size_max >= 0) spec.shape.size_max = s.size_max;
  if (s.edges >= 0) spec.shape.edge_count = s.edges;
  if (s.clusters > 0) spec.shape.cluster_count = s.clusters;
  for (int i = 0; i < s.count; ++i) {
    spec.seed = s.seed + static_cast<std::uint64_t>(i);
    items.push_back({generate(spec), spec.seed});
  }
  return items;
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot write " + path);
    }
  }
  void write(const Json& doc) { stream() << doc.dump() << '\n'; }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit_dot(const OutputOptions& o, const std::vector<Item>& items) {
  if (o.dot.empty()) return;
  std::ofstream f(o.dot);
  if (!f) throw InputError("cannot write " + o.dot);
  for (const auto& it : items) f << to_dot(it.instance);
}

template <class T>
const T& expect_kind(const Instance& inst, const char* what) {
  if (const auto* p = std::get_if<T>(&inst)) return *p;
  throw InputError(std::string("expected a ") + what + " instance");
}

int cmd_gen(const SourceOptions& s, const OutputOptions& o) {
  const auto items = load(s);
  emit_dot(o, items);
  Sink sink(o.out);
  for (const auto& it : items) sink.write(to_json(it.instance));
  return 0;
}

int cmd_solve(const SourceOptions& s, const OutputOptions& o,
              const std::string& problem, const std::string& mode) {
  const auto items = load(s);
  emit_dot(o, items);
  Sink sink(o.out);
  const bool exact = mode == "exact";
  int status = 0;
  for (const auto& it : items) {
    Json doc = Json::object();
    doc["fingerprint"] = instance_fingerprint(it.instance);
    doc["problem"] = problem;
    doc["mode"] = mode;
    try {
      if (problem == "ct") {
        const auto& ct = expect_kind<CtInstance>(it.instance, "ct");
        if (exact) {
          doc["cover"] = to_json(exact_ct(ct));
        } else {
          const auto res = cover(ct);
          doc["cover"] = to_json(res.cover);
          doc["bounds"] = to_json(bounds(res.trace, ct));
          doc["trace"] = to_json(res.trace);
        }
      } else if (problem == "rcp") {
        const auto& rcp = expect_kind<RcpInstance>(it.instance, "rcp");
        if (!exact) throw InputError("rcp has exact mode only");
        const auto sol = exact_rcp(rcp);
        doc["solution"] = sol.vertices;
        doc["profit"] = sol.profit;
      } else {
        const auto& h = expect_kind<DkshInstance>(it.instance, "dksh");
        if (exact) {
          const auto sol = exact_dksh(h);
          doc["solution"] = sol.vertices;
          doc["weight"] = sol.weight;
        } else {
          // Approximate densest subgraph through the rule-caching pipeline.
          const auto res = dks_via_urcp(as_graph(h), h.budget());
          doc["solution"] = res.vertices;
          doc["weight"] = res.induced_edges;
          doc["chosen_m"] = res.chosen_m ? Json(*res.chosen_m) : Json(nullptr);
        }
      }
    } catch (const Infeasible& e) {
      doc["error"] = e.what();
    } catch (const GuardError& e) {
      doc["error"] = e.what();
      status = 1;
    }
    sink.write(doc);
  }
  return status;
}

int cmd_bounds(const SourceOptions& s, const OutputOptions& o) {
  const auto items = load(s);
  emit_dot(o, items);
  Sink sink(o.out);
  for (const auto& it : items) {
    const auto& ct = expect_kind<CtInstance>(it.instance, "ct");
    Json doc = Json::object();
    doc["fingerprint"] = instance_fingerprint(it.instance);
    try {
      const auto res = cover(ct);
      const auto b = bounds(res.trace, ct);
      doc["lb"] = b.lb;
      doc["ub"] = b.ub;
      doc["alpha"] = b.alpha;
      doc["alg_cardinality"] = res.cover.size();
    } catch (const Infeasible& e) {
      doc["error"] = e.what();
    }
    sink.write(doc);
  }
  return 0;
}

int cmd_reduce(const SourceOptions& s, const OutputOptions& o,
               const std::string& kind_name, Weight m, const std::string& solution_dir,
               const std::vector<Vertex>& solution) {
  const auto kind = *parse_reduction_kind(kind_name);
  const auto items = load(s);
  emit_dot(o, items);
  Sink sink(o.out);
  const bool mapping = !solution_dir.empty();
  const auto dir = solution_dir == "project" ? Direction::project : Direction::lift;
  const auto sol = make_vertex_set(solution);
  for (const auto& it : items) {
    Json doc;
    switch (kind) {
      case ReductionKind::bpcc_to_ct: {
        const auto a = bpcc_to_ct(expect_kind<BpccInstance>(it.instance, "bpcc"));
        doc = to_json(a);
        if (mapping) doc["mapped"] = bpcc_map(a, sol, dir);
        break;
      }
      case ReductionKind::dksh_to_rcp: {
        const auto a = dksh_to_rcp(expect_kind<DkshInstance>(it.instance, "dksh"));
        doc = to_json(a);
        if (mapping) doc["mapped"] = dksh_rcp_map(a, sol, dir);
        break;
      }
      case ReductionKind::rcp_to_dksh: {
        const auto a = rcp_to_dksh(expect_kind<RcpInstance>(it.instance, "rcp"));
        doc = to_json(a);
        if (mapping) doc["mapped"] = rcp_dksh_map(a, sol, dir);
        break;
      }
      case ReductionKind::dks_to_urcp: {
        const auto& h = expect_kind<DkshInstance>(it.instance, "dksh");
        const auto a = dks_to_urcp(as_graph(h), h.budget(), m);
        doc = to_json(a);
        if (mapping) {
          if (dir == Direction::lift) throw InputError("dks_to_urcp maps by projection only");
          doc["mapped"] = urcp_project(a, sol);
        }
        break;
      }
      case ReductionKind::degree_augment: {
        const auto a = degree_augment(expect_kind<RcpInstance>(it.instance, "rcp"));
        doc = to_json(a);
        if (mapping) doc["mapped"] = augment_map(a, sol, dir);
        break;
      }
    }
    sink.write(doc);
  }
  return 0;
}

int cmd_verify(const SourceOptions& s, const OutputOptions& o, bool with_exact) {
  const auto items = load(s);
  emit_dot(o, items);
  std::vector<CtInstance> trees;
  for (const auto& it : items) trees.push_back(expect_kind<CtInstance>(it.instance, "ct"));
  const auto reports = run_verify(trees, with_exact, o.jobs);
  Sink sink(o.out);
  int status = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    Json doc = to_json(reports[i]);
    if (!reports[i].passed()) {
      status = 1;
      doc["instance"] = to_json(items[i].instance);
      if (items[i].seed) doc["seed"] = *items[i].seed;
    }
    sink.write(doc);
  }
  return status;
}

int cmd_roundtrip(SourceOptions s, const OutputOptions& o, const std::string& kind_name) {
  const auto kind = *parse_reduction_kind(kind_name);
  if (s.in.empty() && s.kind.empty()) {
    static const std::map<ReductionKind, std::string> source_kind{
        {ReductionKind::bpcc_to_ct, "bpcc"},
        {ReductionKind::dksh_to_rcp, "hypergraph"},
        {ReductionKind::rcp_to_dksh, "digraph"},
        {ReductionKind::dks_to_urcp, "graph"},
        {ReductionKind::degree_augment, "digraph"},
    };
    s.kind = source_kind.at(kind);
  }
  const auto items = load(s);
  emit_dot(o, items);
  std::vector<Instance> sources;
  for (const auto& it : items) sources.push_back(it.instance);
  const auto reports = run_roundtrip(kind, sources, o.jobs);
  Sink sink(o.out);
  int status = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    Json doc = to_json(reports[i]);
    if (!reports[i].passed()) {
      status = 1;
      doc["instance"] = to_json(items[i].instance);
      if (items[i].seed) doc["seed"] = *items[i].seed;
    }
    sink.write(doc);
  }
  return status;
}

int cmd_bench(const SourceOptions& s, const OutputOptions& o, bool with_exact,
              const std::string& isa) {
  if (isa == "scalar") kernels::force_isa(kernels::Isa::scalar);
  if (isa == "avx2") kernels::force_isa(kernels::Isa::avx2);
  const auto items = load(s);
  emit_dot(o, items);
  std::vector<CtInstance> trees;
  for (const auto& it : items) trees.push_back(expect_kind<CtInstance>(it.instance, "ct"));
  const auto start = std::chrono::steady_clock::now();
  const auto reports = run_verify(trees, with_exact, o.jobs);
  const std::chrono::duration<double, std::milli> wall =
      std::chrono::steady_clock::now() - start;
  double alg = 0, exact = 0;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    alg += r.alg_ms;
    exact += r.exact_ms;
    if (!r.passed()) ++failed;
  }
  Json doc = Json::object();
  doc["isa"] = std::string(kernels::isa_name(kernels::active_isa()));
  doc["instances"] = reports.size();
  doc["failed"] = failed;
  doc["jobs"] = o.jobs;
  doc["wall_ms"] = wall.count();
  doc["alg_ms_total"] = alg;
  doc["exact_ms_total"] = exact;
  Sink(o.out).write(doc);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering partially ordered items: solvers, reductions and checks"};
  app.require_subcommand(1);

  // Each subcommand owns its options so per-command defaults stay separate.
  enum { kGen, kSolve, kBounds, kReduce, kVerify, kRoundtrip, kBench, kCommands };
  std::array<SourceOptions, kCommands> srcs;
  std::array<OutputOptions, kCommands> outs;

  auto* gen = app.add_subcommand("gen", "generate seeded instances");
  add_source(gen, srcs[kGen], "out_tree");
  add_output(gen, outs[kGen]);

  std::string problem = "ct", mode = "approx";
  auto* solve = app.add_subcommand("solve", "solve instances");
  add_source(solve, srcs[kSolve], "out_tree");
  add_output(solve, outs[kSolve]);
  solve->add_option("--problem", problem)->check(CLI::IsMember({"ct", "rcp", "dksh"}));
  solve->add_option("--mode", mode)->check(CLI::IsMember({"approx", "exact"}));

  auto* bnd = app.add_subcommand("bounds", "lower and upper bounds from the cover trace");
  add_source(bnd, srcs[kBounds], "out_tree");
  add_output(bnd, outs[kBounds]);

  std::string reduction = "bpcc_to_ct", map_dir;
  Weight m = 1;
  std::vector<Vertex> solution;
  auto* red = app.add_subcommand("reduce", "build a reduction artifact");
  add_source(red, srcs[kReduce], "bpcc");
  add_output(red, outs[kReduce]);
  red->add_option("--reduction", reduction, "reduction kind")
      ->check(CLI::IsMember({"bpcc_to_ct", "dksh_to_rcp", "rcp_to_dksh", "dks_to_urcp",
                             "degree_augment"}));
  red->add_option("--m", m, "edge target for dks_to_urcp")->check(CLI::PositiveNumber);
  red->add_option("--map", map_dir, "also map --solution")
      ->check(CLI::IsMember({"lift", "project"}));
  red->add_option("--solution", solution, "vertex ids to map")->delimiter(',');

  bool with_exact = false;
  auto* ver = app.add_subcommand("verify", "check every cover property");
  add_source(ver, srcs[kVerify], "out_tree");
  add_output(ver, outs[kVerify]);
  ver->add_flag("--exact", with_exact, "also run the exact oracle");

  std::string rt_kind = "bpcc_to_ct";
  auto* rt = app.add_subcommand("roundtrip", "solve both sides of a reduction exactly");
  add_source(rt, srcs[kRoundtrip], "");
  add_output(rt, outs[kRoundtrip]);
  rt->add_option("--reduction", rt_kind, "reduction kind")
      ->check(CLI::IsMember({"bpcc_to_ct", "dksh_to_rcp", "rcp_to_dksh", "dks_to_urcp",
                             "degree_augment"}));

  std::string isa = "auto";
  auto* bench = app.add_subcommand("bench", "time the cover and oracle on a corpus");
  add_source(bench, srcs[kBench], "out_tree");
  add_output(bench, outs[kBench]);
  bench->add_flag("--exact", with_exact, "include the exact oracle");
  bench->add_option("--isa", isa, "kernel selection")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(srcs[kGen], outs[kGen]);
    if (*solve) return cmd_solve(srcs[kSolve], outs[kSolve], problem, mode);
    if (*bnd) return cmd_bounds(srcs[kBounds], outs[kBounds]);
    if (*red) return cmd_reduce(srcs[kReduce], outs[kReduce], reduction, m, map_dir, solution);
    if (*ver) return cmd_verify(srcs[kVerify], outs[kVerify], with_exact);
    if (*rt) return cmd_roundtrip(srcs[kRoundtrip], outs[kRoundtrip], rt_kind);
    if (*bench) return cmd_bench(srcs[kBench], outs[kBench], with_exact, isa);
  } catch (const std::exception& e) {
    std::cerr << "pocover: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
