#include "leader/unbounded.hpp"

#include <algorithm>

#include "leader/codec.hpp"

namespace leader {

namespace {

int ceil_half(int d) { return (d + 1) / 2; }

bool size_one_regime(int D, int tau) { return D <= 2 || tau >= ceil_half(D); }

}  // namespace

AdviceAssignment advice_unbounded(const PortLabeledTree& t, int tau) {
  if (tau < 0) throw SchemeError("tau must be nonnegative");
  auto ci = diameter_and_center(t);
  int D = ci.diameter;
  int n = t.size();
  AdviceAssignment a;
  a.lambda = 2;
  a.per_node.assign(n, "0");
  if (size_one_regime(D, tau)) {
    a.per_node[ci.root] = "1";
    return a;
  }
  auto rt = root_at(t, ci.root);
  if (tau <= 1) {
    for (NodeId v = 0; v < n; ++v) a.per_node[v] = pack_record({0, 0, 0, encode_ports(path_to_root(rt, v), 2)});
    return a;
  }
  int h = tau / 2;
  int thr = ceil_half(D) - tau;
  std::vector<UnboundedAdviceRecord> rec(n);
  std::vector<char> has_piece(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    int d = rt.depth[v];
    rec[v].m1 = d == 0 ? 3 : (d - 1) % 3;
    rec[v].m2 = (d > 0 && d % h == 0) ? 1 : 0;
    rec[v].m3 = d >= thr ? 1 : 0;
  }
  std::vector<NodeId> chain(h + 1);
  for (NodeId u0 : rt.order) {
    int d = rt.depth[u0];
    if (d < 2 * h || d % h) continue;
    chain[0] = u0;
    for (int i = 1; i <= h; ++i) chain[i] = rt.parent[chain[i - 1]];
    if (has_piece[chain[1]]) continue;
    NodeId w = chain[h];
    while (rt.depth[w] > thr) w = rt.parent[w];
    auto s = encode_ports(path_to_root(rt, w), 2);
    std::size_t len = s.size() / h, rem = s.size() % h, pos = 0;
    for (int i = 1; i <= h; ++i) {
      std::size_t l = len + (static_cast<std::size_t>(i - 1) < rem ? 1 : 0);
      rec[chain[i]].c = s.substr(pos, l);
      has_piece[chain[i]] = 1;
      pos += l;
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!has_piece[v]) rec[v].c = "0";
    a.per_node[v] = pack_record(rec[v]);
  }
  return a;
}

PathCode elect_unbounded(const LabeledBall& ball, int tau) {
  const auto& own = ball.advice(0);
  if (own.size() <= 1) {
    // size-1 regime: walk to the node holding "1"
    if (own == "1") return {};
    for (std::size_t i = 1; i < ball.nodes.size(); ++i)
      if (ball.advice(static_cast<int>(i)) == "1") return ball.path_from_center(static_cast<int>(i));
    if (ball.nodes[0].degree == 1) return {0};
    throw SchemeError("no marked node visible");
  }
  std::vector<UnboundedAdviceRecord> rec(ball.nodes.size());
  try {
    for (std::size_t i = 0; i < ball.nodes.size(); ++i) rec[i] = unpack_record(ball.advice(static_cast<int>(i)));
  } catch (const CodecError& e) {
    throw SchemeError(std::string("bad record: ") + e.what());
  }
  try {
    if (tau <= 1) return decode_ports(rec[0].c, 2);
  } catch (const CodecError& e) {
    throw SchemeError(std::string("bad path code: ") + e.what());
  }
  for (std::size_t i = 0; i < rec.size(); ++i)
    if (rec[i].m1 == 3) return ball.path_from_center(static_cast<int>(i));

  // climb tau steps using the M1 recurrence
  std::vector<int> P{0};
  PathCode up;
  for (int step = 0; step < tau; ++step) {
    int x = P.back();
    int want = (rec[x].m1 + 2) % 3;
    int found = -1, port = -1;
    for (int p = 0; p < ball.nodes[x].degree; ++p) {
      int y = ball.neighbor(x, p);
      if (y < 0) throw SchemeError("walk left the ball");
      if (rec[y].m1 == want) {
        if (found >= 0) throw SchemeError("ambiguous parent");
        found = y;
        port = p;
      }
    }
    if (found < 0) throw SchemeError("no parent candidate");
    P.push_back(found);
    up.push_back(port);
  }
  int h = tau / 2;
  int j = -1;
  for (int i = 0; i + h <= tau; ++i)
    if (rec[P[i]].m2 == 1 && rec[P[i + h]].m2 == 1) {
      j = i;
      break;
    }
  if (j < 0) throw SchemeError("no full segment on the upward path");
  std::string s;
  for (int i = j + 1; i <= j + h; ++i) s += rec[P[i]].c;
  PathCode tail;
  try {
    tail = decode_ports(s, 2);
  } catch (const CodecError& e) {
    throw SchemeError(std::string("segment does not decode: ") + e.what());
  }
  int wi = j + h;
  if (rec[P[wi]].m3 == 1) {
    wi = -1;
    for (int i = 0; i <= tau; ++i)
      if (rec[P[i]].m3 == 1) wi = i;
  }
  PathCode out(up.begin(), up.begin() + wi);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::string check_unbounded_structure(const PortLabeledTree& t, const AdviceAssignment& a, int tau) {
  auto ci = diameter_and_center(t);
  if (size_one_regime(ci.diameter, tau) || tau <= 1) return "";
  auto rt = root_at(t, ci.root);
  int h = tau / 2;
  for (NodeId v = 0; v < t.size(); ++v) {
    auto rv = unpack_record(a.per_node[v]);
    if (v != ci.root) {
      // a root child sees M1 = 3 on its parent
      int want = rt.depth[v] == 1 ? 3 : (rv.m1 + 2) % 3, hits = 0;
      NodeId who = -1;
      for (int p = 0; p < t.degree(v); ++p) {
        NodeId y = t.neighbor(v, p);
        if (unpack_record(a.per_node[y]).m1 == want) ++hits, who = y;
      }
      if (hits != 1 || who != rt.parent[v]) return "direction ambiguous at node " + std::to_string(v);
    }
    int d = rt.depth[v];
    if (d > tau) {
      // two M2 depths h apart within [d - tau, d]
      int lo = d - tau;
      int first = ((lo + h - 1) / h) * h;
      if (first < h || first + h > d) return "no full segment visible from node " + std::to_string(v);
    }
  }
  return "";
}

}  // namespace leader
