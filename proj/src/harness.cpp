#include "pocover/harness.hpp"

#include <chrono>
#include <deque>

#include "pocover/exact_oracles.hpp"

namespace pocover {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

Weight set_size(const SizedOutTree& tree, const VertexSet& s) {
  Weight total = 0;
  for (Vertex v : s) total += tree.size(v);
  return total;
}

void check_trace(const CtInstance& instance, const CoverResult& res,
                 CheckList& checks) {
  const auto& tree = instance.tree();
  const Weight k = instance.capacity();
  const auto& tr = res.trace;

  bool even = true, pairs = true, records = true, shape = true;
  std::string detail;
  for (const auto& a : tr.anchors) {
    const auto& ids = a.emitted_sets;
    if (ids.size() < 2 || ids.size() % 2 != 0) {
      even = false;
      detail = "anchor " + std::to_string(a.anchor) + " emitted " +
               std::to_string(ids.size()) + " sets";
    }
    for (std::size_t i = 0; i + 1 < ids.size(); i += 2) {
      const Weight first = set_size(tree, res.cover.sets[ids[i]].members) - a.h;
      const Weight second =
          set_size(tree, res.cover.sets[ids[i + 1]].members) - a.h;
      if (first + second < k - a.h + 1) pairs = false;
    }
    if (a.anchored_size <= 0) records = false;
    if (!a.leftover_vertices.empty() && a.leftover_size <= 0) records = false;
    // Anchored and leftover parts are unions of whole child subtrees.
    for (const auto* part : {&a.anchored_vertices, &a.leftover_vertices})
      for (Vertex v : *part) {
        const Vertex p = *tree.parent(v);
        if (p != a.anchor && !contains(*part, p)) shape = false;
      }
  }
  checks.expect("nextfit_even", even, detail);
  checks.expect("nextfit_pairs", pairs, "consecutive pair below k-h(a)+1");
  checks.expect("anchor_records", records, "sa <= 0 or leftover without lo");
  checks.expect("leftover_whole_subtrees", shape,
                "anchored or leftover part splits a child subtree");

  bool disjoint = true, order = true;
  for (std::size_t i = 0; i < tr.anchors.size(); ++i) {
    for (std::size_t j = 0; j < tr.anchors.size(); ++j) {
      if (i == j) continue;
      const auto& a = tr.anchors[i];
      const auto& b = tr.anchors[j];
      if (i < j) {
        VertexSet common;
        std::set_intersection(a.anchored_vertices.begin(),
                              a.anchored_vertices.end(),
                              b.anchored_vertices.begin(),
                              b.anchored_vertices.end(),
                              std::back_inserter(common));
        if (!common.empty()) disjoint = false;
      }
      if (tree.is_ancestor(a.anchor, b.anchor) && a.iteration <= b.iteration)
        order = false;
    }
  }
  checks.expect("anchors_disjoint", disjoint, "two anchors share a vertex");
  checks.expect("anchor_parent_later", order,
                "ancestor anchor not in a later iteration");
}

}  // namespace

VerifyReport verify_one(const CtInstance& instance, bool with_exact) {
  VerifyReport r;
  r.fingerprint = fingerprint(instance);
  try {
    const auto start = Clock::now();
    CoverResult res;
    try {
      res = cover(instance);
    } catch (const Infeasible& e) {
      r.error = std::string("infeasible: ") + e.what();
      if (with_exact) {
        bool agrees = false;
        try {
          exact_ct(instance);
        } catch (const Infeasible&) {
          agrees = true;
        }
        r.checks.expect("exact_agrees_infeasible", agrees,
                        "exact oracle found a cover");
      }
      return r;
    }
    r.alg_ms = ms_since(start);
    const auto& tr = res.trace;
    r.alg_cardinality = res.cover.size();
    r.forced_sets = tr.forced_prefix.size();
    r.loop_sets = tr.loop_set_count;
    r.residual = tr.final_residual_set.has_value();
    r.bounds = bounds(tr, instance);
    const auto loop_total = static_cast<Weight>(r.loop_sets + (r.residual ? 1 : 0));

    const auto valid = validate_cover(instance, res.cover);
    r.checks.expect("cover_valid", valid.ok(),
                    valid.ok() ? "" : valid.violation().reason);
    check_trace(instance, res, r.checks);
    r.checks.expect("ub_le_2lb", r.bounds.ub <= 2 * r.bounds.lb,
                    "ub=" + std::to_string(r.bounds.ub) +
                        " lb=" + std::to_string(r.bounds.lb));
    r.checks.expect("loop_le_ub", loop_total <= r.bounds.ub,
                    "loop+residual=" + std::to_string(loop_total) +
                        " ub=" + std::to_string(r.bounds.ub));
    // A leftover can end up covered by an inner anchor's sets, so alpha=1
    // does not force a residual set.
    r.checks.expect("residual_implies_alpha", !r.residual || r.bounds.alpha == 1);
    r.checks.expect(
        "cover_le_ub_plus_forced",
        static_cast<Weight>(r.alg_cardinality) <=
            r.bounds.ub + static_cast<Weight>(r.forced_sets));

    if (with_exact) {
      try {
        const auto estart = Clock::now();
        const auto pre = preprocess(instance);
        const std::size_t exact = exact_ct(instance).size();
        const std::size_t reduced =
            pre.reduced ? exact_ct(*pre.reduced).size() : 0;
        r.exact_ms = ms_since(estart);
        r.exact_cardinality = exact;
        r.exact_reduced_cardinality = reduced;
        r.ratio = static_cast<double>(r.alg_cardinality) /
                  static_cast<double>(exact);
        const auto red = static_cast<Weight>(reduced);
        r.checks.expect("lb_le_exact", r.bounds.lb <= red,
                        "lb=" + std::to_string(r.bounds.lb) +
                            " exact=" + std::to_string(red));
        r.checks.expect("exact_le_loop", red <= loop_total,
                        "exact=" + std::to_string(red) +
                            " loop+residual=" + std::to_string(loop_total));
        r.checks.expect("exact_le_alg", exact <= r.alg_cardinality);
        r.checks.expect("ratio_le_2", r.alg_cardinality <= 2 * exact,
                        "alg=" + std::to_string(r.alg_cardinality) +
                            " exact=" + std::to_string(exact));
      } catch (const GuardError& e) {
        r.error = std::string("guard: ") + e.what();
      }
    }
  } catch (const std::exception& e) {
    r.checks.expect("no_internal_error", false, e.what());
  }
  return r;
}

std::vector<VerifyReport> run_verify(const std::vector<CtInstance>& instances,
                                     bool with_exact, unsigned jobs) {
  return parallel_map(instances, jobs, [&](const CtInstance& inst) {
    return verify_one(inst, with_exact);
  });
}

// ---------------------------------------------------------------------------

namespace {

std::vector<char> reachable(const Digraph& g, Vertex from) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::deque<Vertex> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.successors(v))
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  return seen;
}

// Strongly connected using only arcs inside `part`.
bool strongly_connected_within(const Digraph& g, const VertexSet& part) {
  if (part.empty()) return true;
  for (bool forward : {true, false}) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::deque<Vertex> queue{part.front()};
    seen[part.front()] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : forward ? g.successors(v) : g.predecessors(v))
        if (!seen[w] && contains(part, w)) {
          seen[w] = 1;
          ++count;
          queue.push_back(w);
        }
    }
    if (count != part.size()) return false;
  }
  return true;
}

bool closed_and_within(const RcpInstance& inst, const VertexSet& s) {
  return validate_rcp_solution(inst, s).ok();
}

void roundtrip_bpcc(const BpccInstance& src, RoundtripReport& r) {
  const auto art = bpcc_to_ct(src);
  const auto& target = art.target;
  const auto bins = exact_bpcc(src);
  const auto ct = exact_ct(target);
  r.values["opt_source"] = static_cast<Weight>(bins.size());
  r.values["opt_target"] = static_cast<Weight>(ct.size());
  r.checks.expect("opt_equal", bins.size() == ct.size());

  Cover lifted;
  bool bins_ok = true;
  for (const auto& bin : bins) {
    bins_ok = bins_ok && validate_bpcc_configuration(src, bin).ok();
    lifted.sets.push_back({bpcc_map(art, bin, Direction::lift)});
  }
  r.checks.expect("source_solution_valid", bins_ok);
  r.checks.expect("lift_valid", validate_cover(target, lifted).ok() &&
                                    lifted.size() == bins.size());

  std::vector<char> covered(src.item_count(), 0);
  bool proj_ok = true;
  std::size_t used = 0;
  for (const auto& c : ct.sets) {
    const auto items = bpcc_map(art, c.members, Direction::project);
    proj_ok = proj_ok && validate_bpcc_configuration(src, items).ok();
    for (Vertex v : items) covered[v] = 1;
    if (!items.empty()) ++used;
  }
  for (char c : covered) proj_ok = proj_ok && c;
  r.checks.expect("project_valid", proj_ok && used <= ct.size());
  r.checks.expect(
      "shape",
      target.capacity() == 3 * src.capacity() &&
          target.vertex_count() ==
              1 + static_cast<Vertex>(src.clusters().size()) + src.item_count());
  const auto approx = cover(target);
  r.checks.expect("approx_within_2", validate_cover(target, approx.cover).ok() &&
                                         approx.cover.size() <= 2 * ct.size());
}

void roundtrip_dksh_rcp(const DkshInstance& src, RoundtripReport& r) {
  const auto art = dksh_to_rcp(src);
  const auto& target = art.target;
  const auto ds = exact_dksh(src);
  const auto rs = exact_rcp(target, {.canonical = false});
  r.values["opt_source"] = ds.weight;
  r.values["opt_target"] = rs.profit;
  r.checks.expect("opt_equal", ds.weight == rs.profit);

  const auto lifted = dksh_rcp_map(art, ds.vertices, Direction::lift);
  r.checks.expect("lift_valid", closed_and_within(target, lifted) &&
                                    total_profit(target, lifted) == ds.weight);
  const auto projected = dksh_rcp_map(art, rs.vertices, Direction::project);
  r.checks.expect("project_valid",
                  static_cast<Weight>(projected.size()) <= src.budget() &&
                      contained_hyperedges(src, projected).weight >= rs.profit);
  r.checks.expect("project_lift_superset",
                  is_subset(ds.vertices,
                            dksh_rcp_map(art, lifted, Direction::project)));

  const Weight m = art.parameters.at("m");
  const Vertex copies_end = src.vertex_count() * static_cast<Vertex>(m + 1);
  bool bipartite = true;
  for (const auto& [u, v] : target.graph().edges())
    if (!(u < copies_end && v >= copies_end)) bipartite = false;
  r.checks.expect("dag_bipartite", bipartite);
  r.checks.expect("shape", target.vertex_count() == copies_end + m &&
                               target.budget() == src.budget() * (m + 1) + m);
}

void roundtrip_rcp_dksh(const RcpInstance& src, RoundtripReport& r) {
  const auto art = rcp_to_dksh(src);
  const auto& target = art.target;
  const auto rs = exact_rcp(src, {.canonical = false});
  const auto ds = exact_dksh(target);
  r.values["opt_source"] = rs.profit;
  r.values["opt_target"] = ds.weight;
  r.checks.expect("opt_equal", rs.profit == ds.weight);

  const auto lifted = rcp_dksh_map(art, rs.vertices, Direction::lift);
  r.checks.expect("lift_valid",
                  static_cast<Weight>(lifted.size()) <= target.budget() &&
                      contained_hyperedges(target, lifted).weight == rs.profit);
  const auto projected = rcp_dksh_map(art, ds.vertices, Direction::project);
  r.checks.expect("project_valid",
                  closed_and_within(src, projected) &&
                      total_profit(src, projected) >= ds.weight);
  r.checks.expect(
      "minimalize_preserves_weight",
      contained_hyperedges(target, projected).weight == ds.weight &&
          minimalize(target, projected) == projected);

  bool family = target.hyperedges().size() ==
                static_cast<std::size_t>(src.vertex_count());
  for (Vertex v = 0; family && v < src.vertex_count(); ++v)
    family = target.hyperedges()[v] == closure(src.graph(), {v}) &&
             target.weight()[v] == src.profit()[v];
  r.checks.expect("predecessor_hyperedges", family);
}

void roundtrip_augment(const RcpInstance& src, RoundtripReport& r) {
  if (src.vertex_count() < 2) {
    r.skipped = "degree augmentation needs n >= 2";
    return;
  }
  const auto art = degree_augment(src);
  const auto& target = art.target;
  const auto& g = target.graph();
  const Vertex n = src.vertex_count();
  const Weight t = art.parameters.at("t");
  r.values = art.parameters;

  const auto r1 = exact_rcp(src, {.canonical = false});
  const auto r2 = exact_rcp(target, {.canonical = false});
  r.values["opt_source"] = r1.profit;
  r.values["opt_target"] = r2.profit;
  r.checks.expect("opt_equal", r1.profit == r2.profit);

  std::size_t max_in = 0, max_out = 0;
  for (Vertex v = 0; v < target.vertex_count(); ++v) {
    max_in = std::max(max_in, g.in_degree(v));
    max_out = std::max(max_out, g.out_degree(v));
  }
  r.values["max_in_degree"] = static_cast<Weight>(max_in);
  r.values["max_out_degree"] = static_cast<Weight>(max_out);
  r.checks.expect("degree_le_2", max_in <= 2 && max_out <= 2);

  Weight expect_t = 1;
  for (Weight l = 1; l <= art.parameters.at("l0"); ++l)
    expect_t += 2 * (Weight{1} << l);
  const Weight m = art.parameters.at("m");
  r.checks.expect("size_n_times_t",
                  target.vertex_count() == n * t && t == expect_t &&
                      (m & (m - 1)) == 0 && m >= n && m / 2 < n &&
                      target.budget() == src.budget() * t);

  const auto lifted = augment_map(art, r1.vertices, Direction::lift);
  r.checks.expect("lift_valid",
                  closed_and_within(target, lifted) &&
                      static_cast<Weight>(lifted.size()) ==
                          t * static_cast<Weight>(r1.vertices.size()) &&
                      total_profit(target, lifted) == r1.profit);
  const auto projected = augment_map(art, r2.vertices, Direction::project);
  r.checks.expect("project_valid", closed_and_within(src, projected) &&
                                       total_profit(src, projected) == r2.profit);
  r.checks.expect("project_lift_identity",
                  augment_map(art, lifted, Direction::project) == r1.vertices);

  bool reach = true;
  for (Vertex x = 0; x < n; ++x) {
    const auto a = reachable(src.graph(), x);
    const auto b = reachable(g, x);
    for (Vertex y = 0; y < n; ++y)
      if (a[y] != b[y]) reach = false;
  }
  r.checks.expect("reachability_preserved", reach);

  bool gadgets = true;
  for (Vertex x = 0; x < n; ++x)
    gadgets = gadgets && strongly_connected_within(
                             g, set_union({x}, augment_gadget(art, x)));
  r.checks.expect("gadget_strongly_connected", gadgets);
}

void roundtrip_pipeline(const DkshInstance& src, RoundtripReport& r) {
  const auto graph = as_graph(src);
  const Weight k = src.budget();
  if (graph.vertex_count() > 12 || k > 6) {
    r.skipped = "pipeline is limited to n <= 12, k <= 6";
    return;
  }
  const auto res = dks_via_urcp(graph, k);
  const auto ds = exact_dksh(src);
  r.values["opt_source"] = ds.weight;
  r.values["pipeline_edges"] = static_cast<Weight>(res.induced_edges);
  if (res.chosen_m) r.values["chosen_m"] = *res.chosen_m;
  r.checks.expect("opt_equal",
                  static_cast<Weight>(res.induced_edges) == ds.weight);
  r.checks.expect("solution_within_k",
                  static_cast<Weight>(res.vertices.size()) <= k);

  const Weight m_star = ds.weight;
  bool claim = true;
  if (m_star >= 1 && !res.steps.empty()) {
    const auto& step = res.steps.at(static_cast<std::size_t>(m_star - 1));
    r.values["edges_at_m_star"] = static_cast<Weight>(step.edge_vertices);
    claim = static_cast<Weight>(step.edge_vertices) >= m_star;
  }
  r.checks.expect("claim_edges_at_m_star", claim);
  bool groups = true;
  for (const auto& step : res.steps) groups = groups && step.copies_all_or_nothing;
  r.checks.expect("copies_all_or_nothing", groups);

  const auto d1 = dks_to_urcp(graph, k, 1);
  const auto n = static_cast<std::size_t>(graph.vertex_count());
  const std::size_t e = graph.edges().size();
  r.checks.expect("reduced_graph_shape",
                  static_cast<std::size_t>(d1.target.vertex_count()) ==
                          2 * n + e &&
                      d1.target.graph().edges().size() == 2 * n + 4 * e &&
                      d1.target.budget() == 2 * k + 1);
}

}  // namespace

RoundtripReport roundtrip_one(ReductionKind kind, const Instance& source) {
  RoundtripReport r;
  r.kind = kind;
  r.fingerprint = instance_fingerprint(source);
  try {
    switch (kind) {
      case ReductionKind::bpcc_to_ct:
        roundtrip_bpcc(std::get<BpccInstance>(source), r);
        break;
      case ReductionKind::dksh_to_rcp:
        roundtrip_dksh_rcp(std::get<DkshInstance>(source), r);
        break;
      case ReductionKind::rcp_to_dksh:
        roundtrip_rcp_dksh(std::get<RcpInstance>(source), r);
        break;
      case ReductionKind::degree_augment:
        roundtrip_augment(std::get<RcpInstance>(source), r);
        break;
      case ReductionKind::dks_to_urcp:
        roundtrip_pipeline(std::get<DkshInstance>(source), r);
        break;
    }
  } catch (const GuardError& e) {
    r.skipped = std::string("guard: ") + e.what();
  } catch (const std::bad_variant_access&) {
    r.checks.expect("source_kind", false,
                    "instance kind does not match the reduction");
  } catch (const std::exception& e) {
    r.checks.expect("no_internal_error", false, e.what());
  }
  return r;
}

std::vector<RoundtripReport> run_roundtrip(ReductionKind kind,
                                           const std::vector<Instance>& sources,
                                           unsigned jobs) {
  return parallel_map(sources, jobs, [&](const Instance& inst) {
    return roundtrip_one(kind, inst);
  });
}

namespace {

Json checks_json(const CheckList& checks) {
  Json out = Json::array();
  for (const auto& c : checks.items()) {
    Json item = Json::object();
    item["name"] = c.name;
    item["pass"] = c.pass;
    if (!c.pass && !c.detail.empty()) item["detail"] = c.detail;
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

Json to_json(const VerifyReport& r) {
  Json doc = Json::object();
  doc["fingerprint"] = r.fingerprint;
  doc["passed"] = r.passed();
  if (r.error) doc["error"] = *r.error;
  doc["alg_cardinality"] = r.alg_cardinality;
  doc["forced_sets"] = r.forced_sets;
  doc["loop_sets"] = r.loop_sets;
  doc["residual"] = r.residual;
  doc["exact_cardinality"] =
      r.exact_cardinality ? Json(*r.exact_cardinality) : Json(nullptr);
  doc["exact_reduced_cardinality"] = r.exact_reduced_cardinality
                                         ? Json(*r.exact_reduced_cardinality)
                                         : Json(nullptr);
  doc["lb"] = r.bounds.lb;
  doc["ub"] = r.bounds.ub;
  doc["alpha"] = r.bounds.alpha;
  doc["ratio"] = r.ratio ? Json(*r.ratio) : Json(nullptr);
  doc["checks"] = checks_json(r.checks);
  doc["wall_ms"] = {{"alg", r.alg_ms}, {"exact", r.exact_ms}};
  return doc;
}

Json to_json(const RoundtripReport& r) {
  Json doc = Json::object();
  doc["reduction"] = std::string(to_string(r.kind));
  doc["fingerprint"] = r.fingerprint;
  doc["passed"] = r.passed();
  if (r.skipped) doc["skipped"] = *r.skipped;
  Json values = Json::object();
  for (const auto& [k, v] : r.values) values[k] = v;
  doc["values"] = std::move(values);
  doc["checks"] = checks_json(r.checks);
  return doc;
}

}  // namespace pocover
