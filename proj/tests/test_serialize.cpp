#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "pocover/serialize.hpp"

using namespace pocover;

TEST_SUITE("serialize") {

TEST_CASE("instances survive a JSON round trip") {
  const std::vector<Instance> all{
      fixtures::star3x4(),
      fixtures::tree({std::nullopt, 0, 1}, {0, 2, 1}, 4),
      RcpInstance(fixtures::small_dag(), {1, 0, 2, 1}, 2),
      fixtures::two_edges(3),
      BpccInstance({{0, 1}, {2}}, {2, 2, 3}, 4),
  };
  for (const auto& inst : all) {
    const auto doc = to_json(inst);
    CHECK(doc["format_version"] == 1);
    const auto back = instance_from_json(Json::parse(doc.dump()));
    CHECK(to_json(back).dump() == doc.dump());
    CHECK(instance_fingerprint(back) == instance_fingerprint(inst));
  }
}

TEST_CASE("tree documents use the documented layout") {
  const auto doc = to_json(Instance(fixtures::tree({std::nullopt, 0}, {1, 2}, 3)));
  CHECK(doc.dump() ==
        R"({"format_version":1,"kind":"ct","n":2,"parent":[null,0],"size":[1,2],"k":3})");
}

TEST_CASE("malformed documents are input errors") {
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"kind":"ct"})")), InputError);
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"format_version":2,"kind":"ct"})")),
                  InputError);
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"format_version":1,"kind":"zz"})")),
                  InputError);
  CHECK_THROWS_AS(
      instance_from_json(Json::parse(
          R"({"format_version":1,"kind":"ct","n":2,"parent":[null],"size":[1,1],"k":2})")),
      InputError);
  CHECK_THROWS_AS(
      instance_from_json(Json::parse(
          R"({"format_version":1,"kind":"ct","n":1,"parent":[null],"size":[5],"k":2})")),
      InputError);
  std::istringstream bad("{\"a\":1} {oops");
  CHECK_THROWS_AS(read_documents(bad), InputError);
}

TEST_CASE("documents stream one after another") {
  std::istringstream in("{\"a\":1}\n{\"b\":2}\n  \n");
  const auto docs = read_documents(in);
  REQUIRE(docs.size() == 2);
  CHECK(docs[1]["b"] == 2);
}

TEST_CASE("covers, traces and bounds serialize") {
  const auto res = cover(fixtures::star3x4());
  CHECK(to_json(res.cover).dump() == "[[0,1],[0,2],[0,3]]");
  const auto tr = to_json(res.trace);
  CHECK(tr["alpha"] == 1);
  CHECK(tr["final_residual_set"].dump() == "[0,3]");
  CHECK(tr["anchors"][0]["leftover_vertices"].dump() == "[3]");
  CHECK(to_json(Bounds{2, 3, 1}).dump() == R"({"lb":2,"ub":3,"alpha":1})");
}

TEST_CASE("artifacts carry their provenance") {
  const auto a = bpcc_to_ct(BpccInstance({{0, 1}, {2}}, {2, 2, 3}, 4));
  const auto doc = to_json(a);
  CHECK(doc["kind"] == "ct");
  CHECK(doc["reduction"] == "bpcc_to_ct");
  CHECK(doc["source_fingerprint"] == a.source_fingerprint);
  CHECK(doc["parameters"]["K"] == 12);
  CHECK(std::holds_alternative<CtInstance>(instance_from_json(doc)));
}

TEST_CASE("dot output names every vertex") {
  const auto dot = to_dot(fixtures::star4x3());
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("0 -> 4;") != std::string::npos);
  CHECK(to_dot(fixtures::two_edges(3)).find("v3 -- e1;") != std::string::npos);
}

}  // TEST_SUITE
