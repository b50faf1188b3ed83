#include <doctest.h>

#include <random>
#include <sstream>

#include "leader/harness.hpp"
#include "leader/tree.hpp"
#include "oracles.hpp"

using namespace leader;

namespace {

AdviceAssignment uniform(int n, const std::string& s = "0") {
  AdviceAssignment a;
  a.per_node.assign(n, s);
  return a;
}

PortLabeledTree line3() { return build_tree({{0, 0, 1, 0}, {1, 1, 2, 0}}); }

}  // namespace

TEST_CASE("build_tree small inputs") {
  auto t = build_tree({{0, 0, 1, 0}});
  CHECK(t.size() == 2);
  auto l = line3();
  CHECK(l.size() == 3);
  CHECK(l.degree(0) == 1);
  CHECK(l.degree(1) == 2);
  CHECK(l.degree(2) == 1);
  CHECK(l.back_port(1, 1) == 0);

  auto kind = [](auto f) {
    try {
      f();
    } catch (const TreeError& e) {
      return static_cast<int>(e.kind);
    }
    return -1;
  };
  CHECK(kind([] { build_tree({{0, 0, 1, 0}, {0, 0, 2, 0}}); }) == static_cast<int>(TreeError::Kind::DuplicatePort));
  CHECK(kind([] { build_tree({{0, 1, 1, 0}}); }) == static_cast<int>(TreeError::Kind::PortGap));
  CHECK(kind([] { build_tree({{0, 0, 1, 0}, {1, 1, 0, 1}}); }) >= 0);
}

TEST_CASE("diameter and center") {
  auto one = build_tree({}, 1);
  auto c1 = diameter_and_center(one);
  CHECK(c1.diameter == 0);
  CHECK(c1.root == 0);

  auto four = build_tree({{0, 0, 1, 0}, {1, 1, 2, 0}, {2, 1, 3, 0}});
  auto c4 = diameter_and_center(four);
  CHECK(c4.diameter == 3);
  CHECK(c4.center_b >= 0);
  CHECK((c4.root == 1 || c4.root == 2));
  CHECK((c4.root == c4.center_a || c4.root == c4.center_b));

  std::vector<Edge> es;
  for (int i = 1; i <= 5; ++i) es.push_back({0, i - 1, i, 0});
  auto star = build_tree(es);
  auto cs = diameter_and_center(star);
  CHECK(cs.diameter == 2);
  CHECK(cs.root == 0);
  CHECK(cs.center_b == -1);
}

TEST_CASE("odd diameter root does not depend on node ids") {
  // same port-labeled line with ids reversed must pick the same physical node
  auto a = build_tree({{0, 0, 1, 0}, {1, 1, 2, 0}, {2, 1, 3, 0}});
  auto b = build_tree({{3, 0, 2, 0}, {2, 1, 1, 0}, {1, 1, 0, 0}});
  auto ra = diameter_and_center(a).root, rb = diameter_and_center(b).root;
  CHECK(ra == 3 - rb);
}

TEST_CASE("path_ports and follow_path") {
  auto t = line3();
  CHECK(path_ports(t, 0, 2) == PathCode{0, 1});
  CHECK(path_ports(t, 1, 1).empty());
  CHECK(follow_path(t, 0, {0, 1}) == 2);
  CHECK(follow_path(t, 0, {}) == 0);
  try {
    follow_path(t, 0, {0, 0});
    FAIL("expected NotSimple");
  } catch (const TreeError& e) {
    CHECK(e.kind == TreeError::Kind::NotSimple);
  }
  try {
    follow_path(t, 0, {3});
    FAIL("expected InvalidPort");
  } catch (const TreeError& e) {
    CHECK(e.kind == TreeError::Kind::InvalidPort);
  }
}

TEST_CASE("path_ports agrees with a DFS on random trees") {
  Rng rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    auto t = random_tree(2 + static_cast<int>(rng() % 40), rng);
    for (int q = 0; q < 20; ++q) {
      NodeId u = rng() % t.size(), v = rng() % t.size();
      auto p = path_ports(t, u, v);
      CHECK(p == oracle::path(t, u, v));
      CHECK(follow_path(t, u, p) == v);
    }
  }
}

TEST_CASE("balls") {
  auto t = line3();
  auto a = uniform(3);
  auto b0 = extract_ball(t, a, 1, 0);
  CHECK(b0.nodes.size() == 1);
  CHECK(b0.nodes[0].degree == 2);
  CHECK(b0.advice(0) == "0");

  auto full = extract_ball(t, a, 0, 5);
  CHECK(full.nodes.size() == 3);
  CHECK(balls_equal(full, full));

  auto two = build_tree({{0, 0, 1, 0}});
  AdviceAssignment a2;
  a2.per_node = {"1", "0"};
  CHECK_FALSE(balls_equal(extract_ball(two, a2, 0, 1), extract_ball(two, a2, 1, 1)));
  CHECK(balls_equal(extract_ball(two, uniform(2), 0, 1), extract_ball(two, uniform(2), 1, 1)));

  // leaves hanging off one parent at different parent ports
  auto cherry = build_tree({{0, 0, 1, 0}, {0, 1, 2, 0}});
  auto ca = uniform(3);
  CHECK(balls_equal(extract_ball(cherry, ca, 1, 0), extract_ball(cherry, ca, 2, 0)));
  CHECK_FALSE(balls_equal(extract_ball(cherry, ca, 1, 1), extract_ball(cherry, ca, 2, 1)));
}

TEST_CASE("ball equality matches an independent canonical form") {
  Rng rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 2 + static_cast<int>(rng() % 14);
    auto t = random_tree(n, rng);
    AdviceAssignment a;
    for (int i = 0; i < n; ++i) a.per_node.push_back(std::string(1, char('0' + rng() % 2)));
    AdviceIndex idx(a);
    for (int tau = 0; tau <= 3; ++tau)
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v) {
          bool lib = balls_equal(extract_ball(t, idx, u, tau), extract_ball(t, idx, v, tau));
          bool ref = oracle::ball_key(t, a.per_node, u, tau) == oracle::ball_key(t, a.per_node, v, tau);
          REQUIRE(lib == ref);
        }
  }
}

TEST_CASE("ball accessors") {
  // 0 -(0,0)- 1 -(1,0)- 2 -(1,0)- 3
  auto t = build_tree({{0, 0, 1, 0}, {1, 1, 2, 0}, {2, 1, 3, 0}});
  auto b = extract_ball(t, uniform(4), 1, 2);
  CHECK(b.nodes.size() == 4);
  int far = -1;
  for (int i = 0; i < static_cast<int>(b.nodes.size()); ++i)
    if (b.nodes[i].depth == 2) far = i;
  REQUIRE(far >= 0);
  CHECK(b.frontier(far));
  CHECK(b.path_from_center(far) == PathCode{1, 1});
  CHECK(b.path_between(far, 0) == PathCode{0, 0});
  CHECK(b.distance(far, 0) == 2);
  CHECK(b.neighbor(far, 0) >= 0);
}

TEST_CASE("advice measures") {
  AdviceAssignment a;
  a.per_node = {"0101", "1", "", "1"};
  CHECK(a.size() == 4);
  CHECK(a.valency() == 3);
}

TEST_CASE("tree and advice text round trip") {
  Rng rng(2);
  auto t = random_tree(17, rng);
  std::stringstream ss;
  write_tree(ss, t);
  auto u = read_tree(ss);
  REQUIRE(u.size() == t.size());
  for (NodeId v = 0; v < t.size(); ++v) {
    REQUIRE(u.degree(v) == t.degree(v));
    for (int p = 0; p < t.degree(v); ++p) CHECK(u.neighbor(v, p) == t.neighbor(v, p));
  }
  AdviceAssignment a;
  a.lambda = 3;
  a.per_node = {"012", "", "2"};
  std::stringstream sa;
  write_advice(sa, a);
  auto b = read_advice(sa);
  CHECK(b.lambda == 3);
  CHECK(b.per_node == a.per_node);

  std::stringstream bad("n 2\n0 0 1 0\n0 0 1 0\n");
  CHECK_THROWS_AS(read_tree(bad), TreeError);
}

TEST_CASE("swap_ports") {
  auto star = build_tree({{0, 0, 1, 0}, {0, 1, 2, 0}, {0, 2, 3, 0}});
  auto s = swap_ports(star, 0, 0, 2);
  CHECK(s.neighbor(0, 0) == 3);
  CHECK(s.neighbor(0, 2) == 1);
  CHECK(s.back_port(3, 0) == 0);
  auto back = swap_ports(s, 0, 0, 2);
  CHECK(back.neighbor(0, 0) == 1);
}
