#pragma once

// JSON documents for instances, covers, traces and reduction artifacts, plus
// DOT rendering.
//
// Instance documents carry "format_version": 1 and "kind":
//   ct:   {n, parent (null at the root), size, k}
//   rcp:  {n, edges [[u,v],...], profit, k}
//   dksh: {n, hyperedges [[...],...], weight, k}
//   bpcc: {clusters [[...],...], weight, k}
// Reduction artifacts are the target document plus "reduction",
// "source_fingerprint" and "parameters".

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "pocover/ct_cover.hpp"
#include "pocover/instance_gen.hpp"
#include "pocover/reductions.hpp"

namespace pocover {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json to_json(const Instance& instance);
Instance instance_from_json(const Json& doc);

Json to_json(const Cover& cover);
Json to_json(const RunTrace& trace);
Json to_json(const Bounds& b);

template <class S, class T>
Json to_json(const ReductionArtifact<S, T>& artifact) {
  Json doc = to_json(Instance(artifact.target));
  doc["reduction"] = std::string(to_string(artifact.kind));
  doc["source_fingerprint"] = artifact.source_fingerprint;
  Json params = Json::object();
  for (const auto& [name, value] : artifact.parameters) params[name] = value;
  doc["parameters"] = std::move(params);
  return doc;
}

// Reads every whitespace-separated JSON document in the stream.
std::vector<Json> read_documents(std::istream& in);

std::string instance_fingerprint(const Instance& instance);

std::string to_dot(const Instance& instance);

}  // namespace pocover
