#include "pocover/serialize.hpp"

#include <istream>
#include <sstream>

namespace pocover {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

Json header(const char* kind) {
  Json doc = Json::object();
  doc["format_version"] = kFormatVersion;
  doc["kind"] = kind;
  return doc;
}

template <class T>
T field(const Json& doc, const char* name) {
  if (!doc.contains(name))
    throw InputError(std::string("missing field \"") + name + "\"");
  try {
    return doc.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad field \"") + name + "\": " + e.what());
  }
}

void check_length(std::size_t got, Weight n, const char* name) {
  if (static_cast<Weight>(got) != n)
    throw InputError(std::string("field \"") + name + "\" has length " +
                     std::to_string(got) + ", expected " + std::to_string(n));
}

}  // namespace

Json to_json(const Instance& instance) {
  return std::visit(
      Overloaded{
          [](const CtInstance& ct) {
            Json doc = header("ct");
            const auto& tree = ct.tree();
            doc["n"] = tree.vertex_count();
            Json parent = Json::array();
            for (const auto& p : tree.parents())
              parent.push_back(p ? Json(*p) : Json(nullptr));
            doc["parent"] = std::move(parent);
            doc["size"] = tree.sizes();
            doc["k"] = ct.capacity();
            return doc;
          },
          [](const RcpInstance& rcp) {
            Json doc = header("rcp");
            doc["n"] = rcp.vertex_count();
            Json edges = Json::array();
            for (const auto& [u, v] : rcp.graph().edges())
              edges.push_back({u, v});
            doc["edges"] = std::move(edges);
            doc["profit"] = rcp.profit();
            doc["k"] = rcp.budget();
            return doc;
          },
          [](const DkshInstance& dksh) {
            Json doc = header("dksh");
            doc["n"] = dksh.vertex_count();
            doc["hyperedges"] = dksh.hyperedges();
            doc["weight"] = dksh.weight();
            doc["k"] = dksh.budget();
            return doc;
          },
          [](const BpccInstance& bpcc) {
            Json doc = header("bpcc");
            doc["clusters"] = bpcc.clusters();
            doc["weight"] = bpcc.weight();
            doc["k"] = bpcc.capacity();
            return doc;
          },
      },
      instance);
}

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("instance document is not an object");
  const int version = field<int>(doc, "format_version");
  if (version != kFormatVersion)
    throw InputError("unsupported format_version " + std::to_string(version));
  const auto kind = field<std::string>(doc, "kind");
  if (kind == "ct") {
    const auto n = field<Weight>(doc, "n");
    const auto& pj = doc.at("parent");
    if (!pj.is_array()) throw InputError("field \"parent\" is not an array");
    check_length(pj.size(), n, "parent");
    std::vector<std::optional<Vertex>> parent;
    for (const auto& p : pj)
      parent.push_back(p.is_null() ? std::nullopt
                                   : std::optional<Vertex>(p.get<Vertex>()));
    auto size = field<std::vector<Weight>>(doc, "size");
    check_length(size.size(), n, "size");
    return CtInstance(SizedOutTree(std::move(parent), std::move(size)),
                      field<Weight>(doc, "k"));
  }
  if (kind == "rcp") {
    const auto n = field<Vertex>(doc, "n");
    auto edges = field<std::vector<std::pair<Vertex, Vertex>>>(doc, "edges");
    auto profit = field<std::vector<Weight>>(doc, "profit");
    check_length(profit.size(), n, "profit");
    return RcpInstance(Digraph(n, std::move(edges)), std::move(profit),
                       field<Weight>(doc, "k"));
  }
  if (kind == "dksh") {
    return DkshInstance(field<Vertex>(doc, "n"),
                        field<std::vector<VertexSet>>(doc, "hyperedges"),
                        field<std::vector<Weight>>(doc, "weight"),
                        field<Weight>(doc, "k"));
  }
  if (kind == "bpcc") {
    return BpccInstance(field<std::vector<VertexSet>>(doc, "clusters"),
                        field<std::vector<Weight>>(doc, "weight"),
                        field<Weight>(doc, "k"));
  }
  throw InputError("unknown instance kind \"" + kind + "\"");
}

Json to_json(const Cover& cover) {
  Json out = Json::array();
  for (const auto& c : cover.sets) out.push_back(c.members);
  return out;
}

Json to_json(const RunTrace& trace) {
  Json anchors = Json::array();
  for (const auto& a : trace.anchors) {
    Json rec = Json::object();
    rec["anchor"] = a.anchor;
    rec["iteration"] = a.iteration;
    rec["h"] = a.h;
    rec["anchored_size"] = a.anchored_size;
    rec["leftover_size"] = a.leftover_size;
    rec["anchored_vertices"] = a.anchored_vertices;
    rec["leftover_vertices"] = a.leftover_vertices;
    rec["emitted_sets"] = a.emitted_sets;
    anchors.push_back(std::move(rec));
  }
  Json doc = Json::object();
  doc["anchors"] = std::move(anchors);
  doc["top_anchors"] = trace.top_anchors;
  doc["alpha"] = trace.alpha;
  doc["final_residual_set"] = trace.final_residual_set
                                  ? Json(trace.final_residual_set->members)
                                  : Json(nullptr);
  Json forced = Json::array();
  for (const auto& c : trace.forced_prefix) forced.push_back(c.members);
  doc["forced_prefix"] = std::move(forced);
  Json zero = Json::array();
  for (const auto& [leaf, set] : trace.zero_leaf_attachments)
    zero.push_back({leaf, set});
  doc["zero_leaf_attachments"] = std::move(zero);
  doc["loop_set_count"] = trace.loop_set_count;
  doc["iterations"] = trace.iterations;
  return doc;
}

Json to_json(const Bounds& b) {
  Json doc = Json::object();
  doc["lb"] = b.lb;
  doc["ub"] = b.ub;
  doc["alpha"] = b.alpha;
  return doc;
}

std::vector<Json> read_documents(std::istream& in) {
  std::vector<Json> docs;
  while (true) {
    in >> std::ws;
    if (in.peek() == std::char_traits<char>::eof()) break;
    Json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("malformed JSON: ") + e.what());
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::string instance_fingerprint(const Instance& instance) {
  return std::visit([](const auto& x) { return fingerprint(x); }, instance);
}

std::string to_dot(const Instance& instance) {
  std::ostringstream out;
  std::visit(
      Overloaded{
          [&](const CtInstance& ct) {
            const auto& tree = ct.tree();
            out << "digraph ct {\n  label=\"k=" << ct.capacity() << "\";\n";
            for (Vertex v = 0; v < tree.vertex_count(); ++v)
              out << "  " << v << " [label=\"" << v << " (" << tree.size(v)
                  << ")\"];\n";
            for (Vertex v = 0; v < tree.vertex_count(); ++v)
              if (auto p = tree.parent(v))
                out << "  " << *p << " -> " << v << ";\n";
          },
          [&](const RcpInstance& rcp) {
            out << "digraph rcp {\n  label=\"k=" << rcp.budget() << "\";\n";
            for (Vertex v = 0; v < rcp.vertex_count(); ++v)
              out << "  " << v << " [label=\"" << v << " (" << rcp.profit()[v]
                  << ")\"];\n";
            for (const auto& [u, v] : rcp.graph().edges())
              out << "  " << u << " -> " << v << ";\n";
          },
          [&](const DkshInstance& dksh) {
            out << "graph dksh {\n  label=\"k=" << dksh.budget() << "\";\n";
            for (Vertex v = 0; v < dksh.vertex_count(); ++v)
              out << "  v" << v << " [label=\"" << v << "\"];\n";
            for (std::size_t j = 0; j < dksh.hyperedges().size(); ++j) {
              out << "  e" << j << " [shape=box,label=\"e" << j << " ("
                  << dksh.weight()[j] << ")\"];\n";
              for (Vertex v : dksh.hyperedges()[j])
                out << "  v" << v << " -- e" << j << ";\n";
            }
          },
          [&](const BpccInstance& bpcc) {
            out << "graph bpcc {\n  label=\"k=" << bpcc.capacity() << "\";\n";
            for (std::size_t c = 0; c < bpcc.clusters().size(); ++c) {
              out << "  subgraph cluster_" << c << " {\n";
              for (Vertex v : bpcc.clusters()[c])
                out << "    " << v << " [label=\"" << v << " ("
                    << bpcc.weight()[v] << ")\"];\n";
              out << "  }\n";
            }
          },
      },
      instance);
  out << "}\n";
  return out.str();
}

}  // namespace pocover
