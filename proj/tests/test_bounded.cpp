#include <doctest.h>

#include "leader/bounded.hpp"
#include "leader/harness.hpp"

using namespace leader;

namespace {

PortLabeledTree caterpillar() {
  std::vector<Edge> es;
  int n = 7;
  for (int i = 0; i < 6; ++i) es.push_back({i, 0, i + 1, i + 1 == 6 ? 0 : 1});
  for (int i = 1; i <= 5; ++i) es.push_back({i, 2, n++, 0});
  return build_tree(es, n);
}

BoundedError::Kind error_kind(const PortLabeledTree& t, int tau, const BoundedOptions& opt = {}) {
  try {
    bounded_valency_advice(t, tau, 2, 0.5, nullptr, opt);
  } catch (const BoundedError& e) {
    return e.kind;
  }
  FAIL("expected BoundedError");
  return BoundedError::Kind::FallbackTooLarge;
}

}  // namespace

TEST_CASE("thresholds") {
  CHECK(pipeline_tau_threshold(4) == 149);
  CHECK(pipeline_tau_threshold(5) == 5 * 3 * 20 + 6);
  auto sp = make_params(5000, 4000, 149, 2, 0.8, 4);
  CHECK(sp.k == 4);
  CHECK(sp.pipeline);
  CHECK_FALSE(make_params(5000, 4000, 148, 2, 0.8, 4).pipeline);
  CHECK_FALSE(make_params(100, 80, 149, 2, 0.8, 4).pipeline);  // n below 200/(1-c)
}

TEST_CASE("k is the smallest integer meeting the gamma condition") {
  auto sp = make_params(5000, 4000, 2000, 2, 0.8);
  REQUIRE(sp.tau_prime > 0);
  REQUIRE(sp.k_found);
  double g = static_cast<double>(2000) / sp.tau_prime;
  CHECK(g * (sp.k - 3) >= sp.k + 1);
  if (sp.k > 4) CHECK(g * (sp.k - 4) < sp.k);
}

TEST_CASE("two-node fallback") {
  auto t = build_tree({{0, 0, 1, 0}});
  BoundedReport rep;
  auto a = bounded_valency_advice(t, 0, 2, 0.5, &rep);
  CHECK_FALSE(rep.used_pipeline);
  CHECK(rep.leader == diameter_and_center(t).root);
  CHECK(a.valency() == 2);
  CHECK(a.per_node[0][0] != a.per_node[1][0]);
  auto o = run_election(t, a, make_elector(Scheme::Bounded, 0, &rep.params), 0);
  CHECK(o.ok());
  CHECK(o.outputs[rep.leader].empty());
}

TEST_CASE("fallback failures") {
  CHECK(error_kind(caterpillar(), 1) == BoundedError::Kind::NoDistinguishingColoring);
  BoundedOptions small;
  small.fallback_cap = 11;
  CHECK(error_kind(caterpillar(), 2, small) == BoundedError::Kind::FallbackTooLarge);
  BoundedReport rep;
  auto a = bounded_valency_advice(caterpillar(), 2, 2, 0.5, &rep);
  CHECK_THROWS_AS(make_elector(Scheme::Bounded, 2, nullptr), std::invalid_argument);
  auto o = run_election(caterpillar(), a, make_elector(Scheme::Bounded, 2, &rep.params), 2, rep.leader);
  CHECK(o.ok());
}

TEST_CASE("pipeline regime tree elects the root everywhere") {
  Rng rng(31);
  int n = 1600, D = 1280;
  auto t = random_tree_with_diameter(n, D, rng);
  // gamma >= 5 at k = 4 forces tau >= 5 tau'
  auto probe = make_params(n, D, 0, 2, 0.8, 4);
  int tau = std::max(149, 5 * probe.tau_prime);
  BoundedReport rep;
  auto a = bounded_valency_advice(t, tau, 2, 0.8, &rep);
  REQUIRE(rep.used_pipeline);
  CHECK(rep.params.k == 4);
  CHECK(a.size() == 1);
  CHECK(a.valency() <= 2);
  CHECK(rep.depth_violations == 0);
  CHECK(rep.payload.capacity_violations == 0);
  auto o = run_election(t, a, make_elector(Scheme::Bounded, tau, &rep.params), tau);
  CHECK(o.ok());
  CHECK(o.error_count() == 0);
  CHECK(o.outputs[diameter_and_center(t).root].empty());
}
