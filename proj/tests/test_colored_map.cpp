#include <doctest.h>

#include "leader/colored_map.hpp"
#include "leader/harness.hpp"
#include "oracles.hpp"

using namespace leader;

TEST_CASE("two-node tree") {
  auto t = build_tree({{0, 0, 1, 0}});
  CHECK_THROWS_AS(colored_map_advice(t, {0, 0}, 1, 2), IdentificationFailure);

  NodeId root = diameter_and_center(t).root;
  std::vector<int> f(2, 0);
  f[root] = 1;
  auto a = colored_map_advice(t, f, 1, 2);
  CHECK(a.valency() == 2);
  auto o = run_election(t, a, make_elector(Scheme::ColoredMap, 1), 1);
  CHECK(o.ok());
  CHECK(o.outputs[root].empty());
  CHECK(o.outputs[1 - root] == PathCode{0});

  auto cert = election_index(t, 2, 3);
  REQUIRE(cert);
  CHECK(cert->tau == 0);
  CHECK_THROWS_AS(election_index(t, 1, 3), SchemeError);
}

TEST_CASE("single node") {
  auto t = build_tree({}, 1);
  auto cert = election_index(t, 3, 0);
  REQUIRE(cert);
  CHECK(cert->tau == 0);
  CHECK(cert->outputs[0].empty());
}

TEST_CASE("map serialization round trip") {
  Rng rng(8);
  auto t = random_tree(9, rng);
  ColoredMap m{t, {0, 1, 1, 0, 1, 0, 0, 0, 1}, 4};
  auto s = serialize_map(m);
  CHECK(s.find_first_not_of("01") == std::string::npos);
  auto back = parse_map(s);
  CHECK(back.root == 4);
  CHECK(back.color == m.color);
  CHECK(back.tree.size() == 9);
  CHECK_THROWS_AS(parse_map("10"), SchemeError);
}

TEST_CASE("distinct colors everywhere elect with the whole map in view") {
  // a path with a root-colored center: every ball of radius D shows everything
  auto t = build_tree({{0, 0, 1, 0}, {1, 1, 2, 0}, {2, 1, 3, 0}});
  NodeId r = diameter_and_center(t).root;
  std::vector<int> f(4, 0);
  f[r] = 1;
  auto a = colored_map_advice(t, f, 3, 2);
  for (NodeId v = 0; v < 4; ++v) {
    auto b = extract_ball(t, a, v, 3);
    CHECK(elect_colored_map(b) == path_ports(t, v, r));
  }
}

TEST_CASE("election_index agrees with the definition on small random trees") {
  Rng rng(21);
  for (int rep = 0; rep < 25; ++rep) {
    int n = 2 + static_cast<int>(rng() % 6);
    auto t = random_tree(n, rng);
    auto cert = election_index(t, 2, n);
    auto ref = oracle::xi(t, 2, n);
    REQUIRE(cert.has_value() == ref.has_value());
    if (!cert) continue;
    CHECK(cert->tau == *ref);
    // the certificate itself satisfies the definition
    std::vector<std::string> adv;
    for (int c : cert->colors) adv.push_back(std::to_string(c));
    CHECK(oracle::election_possible(t, adv, cert->tau));
    for (NodeId v = 0; v < n; ++v) {
      auto e = oracle::walk(t, v, cert->outputs[v]);
      CHECK((e && *e == cert->leader));
    }
  }
}

TEST_CASE("caterpillar needs time 2 with two colors") {
  // spine s0..s6 and a pendant leaf at port 2 on s1..s5
  std::vector<Edge> es;
  int n = 7;
  for (int i = 0; i < 6; ++i) es.push_back({i, 0, i + 1, i + 1 == 6 ? 0 : 1});
  for (int i = 1; i <= 5; ++i) es.push_back({i, 2, n++, 0});
  auto t = build_tree(es, n);
  CHECK_FALSE(find_certificate(t, 2, 0));
  CHECK_FALSE(find_certificate(t, 2, 1));
  auto cert = election_index(t, 2, 3);
  REQUIRE(cert);
  CHECK(cert->tau == 2);
}
