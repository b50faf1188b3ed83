#include "leader/tree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace leader {

namespace {

std::string edge_str(const Edge& e) {
  std::ostringstream os;
  os << "(" << e.u << "," << e.pu << "," << e.v << "," << e.pv << ")";
  return os.str();
}

std::vector<int> bfs_dist(const PortLabeledTree& t, NodeId s, std::vector<NodeId>* par) {
  std::vector<int> dist(t.size(), -1);
  if (par) par->assign(t.size(), -1);
  std::vector<NodeId> q{s};
  dist[s] = 0;
  for (std::size_t h = 0; h < q.size(); ++h) {
    NodeId x = q[h];
    for (int p = 0; p < t.degree(x); ++p) {
      NodeId y = t.neighbor(x, p);
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        if (par) (*par)[y] = x;
        q.push_back(y);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<Edge> PortLabeledTree::edges() const {
  std::vector<Edge> out;
  for (NodeId u = 0; u < size(); ++u)
    for (int p = 0; p < degree(u); ++p) {
      NodeId v = nbr_[u][p];
      if (u < v) out.push_back({u, p, v, back_[u][p]});
    }
  return out;
}

PortLabeledTree build_tree(const std::vector<Edge>& edges, int n) {
  using K = TreeError::Kind;
  if (n <= 0) {
    NodeId mx = 0;
    for (auto& e : edges) mx = std::max({mx, e.u, e.v});
    n = mx + 1;
  }
  std::set<std::pair<NodeId, NodeId>> pairs;
  std::vector<std::unordered_map<int, std::pair<NodeId, int>>> slot(n);
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw TreeError(K::BadId, "node id out of range in " + edge_str(e));
    if (e.pu < 0 || e.pv < 0) throw TreeError(K::PortGap, "negative port in " + edge_str(e));
    if (e.u == e.v) throw TreeError(K::NotATree, "self loop " + edge_str(e));
    auto key = std::minmax(e.u, e.v);
    if (!pairs.insert({key.first, key.second}).second)
      throw TreeError(K::AsymmetricEdge, "edge listed twice " + edge_str(e));
    if (!slot[e.u].emplace(e.pu, std::make_pair(e.v, e.pv)).second)
      throw TreeError(K::DuplicatePort, "port " + std::to_string(e.pu) + " reused at node " + std::to_string(e.u));
    if (!slot[e.v].emplace(e.pv, std::make_pair(e.u, e.pu)).second)
      throw TreeError(K::DuplicatePort, "port " + std::to_string(e.pv) + " reused at node " + std::to_string(e.v));
  }
  PortLabeledTree t;
  t.nbr_.resize(n);
  t.back_.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    int d = static_cast<int>(slot[v].size());
    t.nbr_[v].assign(d, -1);
    t.back_[v].assign(d, -1);
    for (auto& [p, nb] : slot[v]) {
      if (p >= d) throw TreeError(K::PortGap, "ports at node " + std::to_string(v) + " are not 0..deg-1");
      t.nbr_[v][p] = nb.first;
      t.back_[v][p] = nb.second;
    }
  }
  if (static_cast<int>(edges.size()) != n - 1) throw TreeError(K::NotATree, "edge count is not n-1");
  auto dist = bfs_dist(t, 0, nullptr);
  if (std::count(dist.begin(), dist.end(), -1) > 0) throw TreeError(K::NotATree, "graph is disconnected");
  return t;
}

PortLabeledTree swap_ports(const PortLabeledTree& t, NodeId v, int a, int b) {
  auto es = t.edges();
  auto sw = [&](int p) { return p == a ? b : (p == b ? a : p); };
  for (auto& e : es) {
    if (e.u == v) e.pu = sw(e.pu);
    if (e.v == v) e.pv = sw(e.pv);
  }
  return build_tree(es, t.size());
}

Rooted root_at(const PortLabeledTree& t, NodeId r) {
  Rooted rt;
  rt.root = r;
  int n = t.size();
  rt.parent.assign(n, -1);
  rt.parent_port.assign(n, -1);
  rt.port_at_parent.assign(n, -1);
  rt.depth.assign(n, -1);
  rt.order.reserve(n);
  rt.order.push_back(r);
  rt.depth[r] = 0;
  for (std::size_t h = 0; h < rt.order.size(); ++h) {
    NodeId x = rt.order[h];
    for (int p = 0; p < t.degree(x); ++p) {
      NodeId y = t.neighbor(x, p);
      if (y == rt.parent[x]) continue;
      rt.parent[y] = x;
      rt.port_at_parent[y] = p;
      rt.parent_port[y] = t.back_port(x, p);
      rt.depth[y] = rt.depth[x] + 1;
      rt.height = std::max(rt.height, rt.depth[y]);
      rt.order.push_back(y);
    }
  }
  return rt;
}

CenterInfo diameter_and_center(const PortLabeledTree& t) {
  CenterInfo ci;
  if (t.size() == 1) return ci;
  auto d0 = bfs_dist(t, 0, nullptr);
  NodeId a = static_cast<NodeId>(std::max_element(d0.begin(), d0.end()) - d0.begin());
  std::vector<NodeId> par;
  auto da = bfs_dist(t, a, &par);
  NodeId b = static_cast<NodeId>(std::max_element(da.begin(), da.end()) - da.begin());
  ci.diameter = da[b];
  std::vector<NodeId> path;
  for (NodeId x = b; x != -1; x = par[x]) path.push_back(x);
  int D = ci.diameter;
  if (D % 2 == 0) {
    ci.center_a = ci.root = path[D / 2];
    return ci;
  }
  NodeId x = path[(D - 1) / 2], y = path[(D + 1) / 2];
  ci.center_a = x;
  ci.center_b = y;
  AdviceAssignment empty;
  empty.per_node.assign(t.size(), "");
  AdviceIndex idx(empty);
  auto sx = serialize_ball(extract_ball(t, idx, x, 1));
  auto sy = serialize_ball(extract_ball(t, idx, y, 1));
  if (sx != sy) {
    ci.root = sx < sy ? x : y;
  } else {
    int px = 0, py = 0;
    for (int p = 0; p < t.degree(x); ++p)
      if (t.neighbor(x, p) == y) px = p;
    for (int p = 0; p < t.degree(y); ++p)
      if (t.neighbor(y, p) == x) py = p;
    ci.root = py < px ? y : x;
  }
  return ci;
}

PathCode path_ports(const PortLabeledTree& t, NodeId u, NodeId v) {
  // parents toward v, then walk from u
  std::vector<NodeId> par;
  bfs_dist(t, v, &par);
  PathCode out;
  for (NodeId x = u; x != v;) {
    NodeId nx = par[x];
    for (int p = 0; p < t.degree(x); ++p)
      if (t.neighbor(x, p) == nx) {
        out.push_back(p);
        break;
      }
    x = nx;
  }
  return out;
}

PathCode path_to_root(const Rooted& rt, NodeId u) {
  PathCode out;
  for (NodeId x = u; x != rt.root; x = rt.parent[x]) out.push_back(rt.parent_port[x]);
  return out;
}

NodeId follow_path(const PortLabeledTree& t, NodeId start, const PathCode& code) {
  using K = TreeError::Kind;
  std::unordered_set<NodeId> seen{start};
  NodeId x = start;
  for (std::size_t i = 0; i < code.size(); ++i) {
    int p = code[i];
    if (p < 0 || p >= t.degree(x))
      throw TreeError(K::InvalidPort, "port " + std::to_string(p) + " invalid at step " + std::to_string(i));
    x = t.neighbor(x, p);
    if (!seen.insert(x).second) throw TreeError(K::NotSimple, "walk revisits a node at step " + std::to_string(i));
  }
  return x;
}

int AdviceAssignment::size() const {
  std::size_t m = 0;
  for (auto& s : per_node) m = std::max(m, s.size());
  return static_cast<int>(m);
}

int AdviceAssignment::valency() const {
  std::unordered_set<std::string> s(per_node.begin(), per_node.end());
  return static_cast<int>(s.size());
}

AdviceIndex::AdviceIndex(const AdviceAssignment& a) {
  auto tab = std::make_shared<std::vector<AdviceString>>();
  std::unordered_map<std::string, std::int32_t> seen;
  id.reserve(a.per_node.size());
  for (auto& s : a.per_node) {
    auto [it, fresh] = seen.emplace(s, static_cast<std::int32_t>(tab->size()));
    if (fresh) tab->push_back(s);
    id.push_back(it->second);
  }
  table = std::move(tab);
}

LabeledBall extract_ball(const PortLabeledTree& t, const AdviceIndex& adv, NodeId v, int tau) {
  LabeledBall b;
  b.radius = tau;
  b.table = adv.table;
  std::vector<NodeId> tid{v};
  b.nodes.push_back({-1, -1, -1, t.degree(v), 0, 0, 0, adv.id[v]});
  for (std::size_t i = 0; i < b.nodes.size(); ++i) {
    if (b.nodes[i].depth >= tau) continue;
    NodeId x = tid[i];
    int up = b.nodes[i].port_up;
    int first = static_cast<int>(b.nodes.size());
    int depth = b.nodes[i].depth + 1;
    for (int p = 0; p < t.degree(x); ++p) {
      if (p == up) continue;
      NodeId y = t.neighbor(x, p);
      tid.push_back(y);
      b.nodes.push_back({static_cast<std::int32_t>(i), p, t.back_port(x, p), t.degree(y), depth, 0, 0, adv.id[y]});
    }
    b.nodes[i].first_child = first;
    b.nodes[i].child_count = static_cast<int>(b.nodes.size()) - first;
  }
  return b;
}

LabeledBall extract_ball(const PortLabeledTree& t, const AdviceAssignment& adv, NodeId v, int tau) {
  return extract_ball(t, AdviceIndex(adv), v, tau);
}

int LabeledBall::neighbor(int i, int p) const {
  const auto& nd = nodes[i];
  if (p < 0 || p >= nd.degree) return -1;
  if (p == nd.port_up) return nd.parent;
  if (nd.depth >= radius) return -1;
  int idx = (nd.port_up >= 0 && p > nd.port_up) ? p - 1 : p;
  return nd.first_child + idx;
}

PathCode LabeledBall::path_from_center(int i) const {
  PathCode out;
  for (int x = i; x != 0; x = nodes[x].parent) out.push_back(nodes[x].port_at_parent);
  std::reverse(out.begin(), out.end());
  return out;
}

PathCode LabeledBall::path_between(int i, int j) const {
  // climb both to their meeting point
  PathCode up, down;
  int a = i, b = j;
  while (nodes[a].depth > nodes[b].depth) {
    up.push_back(nodes[a].port_up);
    a = nodes[a].parent;
  }
  while (nodes[b].depth > nodes[a].depth) {
    down.push_back(nodes[b].port_at_parent);
    b = nodes[b].parent;
  }
  while (a != b) {
    up.push_back(nodes[a].port_up);
    a = nodes[a].parent;
    down.push_back(nodes[b].port_at_parent);
    b = nodes[b].parent;
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

int LabeledBall::distance(int i, int j) const {
  int a = i, b = j, d = 0;
  while (nodes[a].depth > nodes[b].depth) a = nodes[a].parent, ++d;
  while (nodes[b].depth > nodes[a].depth) b = nodes[b].parent, ++d;
  while (a != b) a = nodes[a].parent, b = nodes[b].parent, d += 2;
  return d;
}

bool balls_equal(const LabeledBall& a, const LabeledBall& b) {
  if (a.radius != b.radius) throw BallError("radius mismatch");
  if (a.nodes.size() != b.nodes.size()) return false;
  bool same_table = a.table == b.table;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    const auto& x = a.nodes[i];
    const auto& y = b.nodes[i];
    if (x.parent != y.parent || x.port_at_parent != y.port_at_parent || x.port_up != y.port_up ||
        x.degree != y.degree || x.child_count != y.child_count)
      return false;
    if (same_table ? x.advice != y.advice : a.advice(i) != b.advice(i)) return false;
  }
  return true;
}

std::string serialize_ball(const LabeledBall& b) {
  std::string out;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    const auto& nd = b.nodes[i];
    out += b.advice(i).empty() ? "-" : b.advice(i);
    out += ',' + std::to_string(nd.degree) + ',' + std::to_string(nd.child_count);
    for (int c = 0; c < nd.child_count; ++c) {
      const auto& ch = b.nodes[nd.first_child + c];
      out += '(' + std::to_string(ch.port_at_parent) + ',' + std::to_string(ch.port_up) + ')';
    }
    out += ';';
    for (int c = nd.child_count - 1; c >= 0; --c) stack.push_back(nd.first_child + c);
  }
  return out;
}

namespace {

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

PortLabeledTree read_tree(std::istream& in) {
  using K = TreeError::Kind;
  std::string line, tag;
  if (!next_data_line(in, line)) throw TreeError(K::Parse, "empty tree file");
  std::istringstream hs(line);
  int n = 0;
  if (!(hs >> tag >> n) || tag != "n" || n <= 0) throw TreeError(K::Parse, "expected 'n <count>'");
  std::vector<Edge> es;
  while (next_data_line(in, line)) {
    std::istringstream ls(line);
    Edge e{};
    if (!(ls >> e.u >> e.pu >> e.v >> e.pv)) throw TreeError(K::Parse, "bad edge line: " + line);
    es.push_back(e);
  }
  return build_tree(es, n);
}

void write_tree(std::ostream& out, const PortLabeledTree& t) {
  out << "n " << t.size() << "\n";
  for (auto& e : t.edges()) out << e.u << ' ' << e.pu << ' ' << e.v << ' ' << e.pv << "\n";
}

AdviceAssignment read_advice(std::istream& in) {
  using K = TreeError::Kind;
  std::string line, tag;
  if (!next_data_line(in, line)) throw TreeError(K::Parse, "empty advice file");
  std::istringstream hs(line);
  AdviceAssignment a;
  if (!(hs >> tag >> a.lambda) || tag != "lambda" || a.lambda < 2 || a.lambda > 10)
    throw TreeError(K::Parse, "expected 'lambda <2..10>'");
  std::vector<std::pair<int, std::string>> rows;
  int mx = -1;
  while (next_data_line(in, line)) {
    std::istringstream ls(line);
    int id;
    std::string s;
    if (!(ls >> id >> s) || id < 0) throw TreeError(K::Parse, "bad advice line: " + line);
    if (s == "-") s.clear();
    for (char c : s)
      if (c < '0' || c - '0' >= a.lambda) throw TreeError(K::Parse, "symbol out of alphabet: " + line);
    rows.emplace_back(id, s);
    mx = std::max(mx, id);
  }
  a.per_node.assign(mx + 1, "");
  for (auto& [id, s] : rows) a.per_node[id] = s;
  return a;
}

void write_advice(std::ostream& out, const AdviceAssignment& a) {
  out << "lambda " << a.lambda << "\n";
  for (std::size_t i = 0; i < a.per_node.size(); ++i)
    out << i << ' ' << (a.per_node[i].empty() ? "-" : a.per_node[i]) << "\n";
}

}  // namespace leader
