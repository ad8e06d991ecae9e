#include <doctest.h>

#include <algorithm>

#include "octopia/presets.hpp"
#include "octopia/scot.hpp"

using namespace octopia;

namespace {

bool has(const std::vector<Violation>& vs, ScotProperty p) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.property == p; });
}

}  // namespace

TEST_CASE("link counting identities") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const auto t = preset_topology(name);
    const auto& af = t.acyclic_factor();
    const auto& cf = t.connectivity_factor();
    CHECK(t.broker_count() == af.order() * cf.order());
    CHECK(t.alinks().size() == af.size() * cf.order());
    CHECK(t.ilinks().size() == af.order() * cf.size());
    CHECK(t.alinks().size() + t.ilinks().size() == t.overlay().size());
  }
  const auto fig3 = preset_topology("fig3");
  CHECK(fig3.broker_count() == 18);
  CHECK(fig3.overlay().size() == 33);
  const auto fig10 = preset_topology("fig10");
  CHECK(fig10.broker_count() == 70);
  CHECK(fig10.alinks().size() == 65);
  CHECK(fig10.ilinks().size() == 140);
  CHECK(fig10.diam_af() == 5);
}

TEST_CASE("clusters and regions") {
  const auto t = preset_topology("fig3");
  CHECK(t.cluster_count() == 3);
  CHECK(t.region_count() == 6);
  for (ClusterIndex ci = 0; ci < 3; ++ci) {
    CHECK(t.cluster(ci).size() == 6);
    for (auto b : t.cluster(ci)) CHECK(t.cluster_of(b) == ci);
  }
  const auto b = t.index_of(parse_broker_id("(d,1)"));
  CHECK(t.name(b) == "(d,1)");
  CHECK(t.region(t.region_of(b)).size() == 3);
  CHECK(t.name(t.region_peer(b, 2)) == "(d,2)");
  for (const auto& l : t.alinks()) CHECK(t.cluster_of(l.a) == t.cluster_of(l.b));
  for (const auto& l : t.ilinks()) CHECK(t.region_of(l.a) == t.region_of(l.b));
}

TEST_CASE("neighbours and broker classes") {
  const auto t = preset_topology("fig3");
  const auto& a0 = t.neighbours(parse_broker_id("(a,0)"));
  CHECK(a0.primary.size() == 1);
  CHECK(a0.secondary.size() == 2);
  CHECK(a0.broker_class == BrokerClass::Edge);
  const auto& b1 = t.neighbours(parse_broker_id("(b,1)"));
  CHECK(b1.primary.size() == 3);
  CHECK(b1.broker_class == BrokerClass::Inner);
  CHECK(t.link_kind(t.index_of(parse_broker_id("(a,0)")), t.index_of(parse_broker_id("(b,0)"))) == LinkKind::ALink);
  CHECK(t.link_kind(t.index_of(parse_broker_id("(a,0)")), t.index_of(parse_broker_id("(a,2)"))) == LinkKind::ILink);
  CHECK_THROWS_AS(t.link_kind(t.index_of(parse_broker_id("(a,0)")), t.index_of(parse_broker_id("(c,0)"))),
                  TopologyError);
  CHECK_THROWS_AS(t.neighbours(parse_broker_id("(q,0)")), TopologyError);
}

TEST_CASE("broker ids") {
  CHECK(parse_broker_id("(a,0)").af == "a");
  CHECK(parse_broker_id("G,3").ci == 3);
  CHECK(parse_broker_id("(b,2)").str() == "(b,2)");
  CHECK_THROWS(parse_broker_id("(a)"));
  CHECK_THROWS(parse_broker_id("(a,x)"));
}

TEST_CASE("factor validation") {
  const auto tri = complete_graph(3);
  auto vs = validate_factors(tri, tri);
  CHECK(has(vs, ScotProperty::Acyclic));
  CHECK_FALSE(has(vs, ScotProperty::Connectivity));

  vs = validate_factors(path_graph({"a", "b", "c"}), path_graph({"0", "1", "2"}));
  CHECK(has(vs, ScotProperty::Connectivity));

  vs = validate_factors(path_graph({"a", "b"}), Graph::build({"x", "y"}, {{"x", "y"}}));
  CHECK(has(vs, ScotProperty::Index));

  // Operands swapped: the complete factor comes first.
  vs = validate_factors(complete_graph(3), path_graph({"a", "b", "c"}));
  CHECK(has(vs, ScotProperty::LabelOrder));

  CHECK(validate_factors(path_graph({"a", "b", "c"}), complete_graph(3)).empty());
  CHECK_THROWS_AS(ScotTopology::build(tri, tri), TopologyError);
}

TEST_CASE("single-cluster topology") {
  const auto t = ScotTopology::build(path_graph({"a", "b", "c"}), complete_graph(1));
  CHECK(t.broker_count() == 3);
  CHECK(t.ilinks().empty());
}
