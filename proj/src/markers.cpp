#include "leader/markers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "leader/codec.hpp"

namespace leader {

const char* marker_name(Marker m) {
  switch (m) {
    case Marker::White: return "white";
    case Marker::Green: return "green";
    case Marker::Blue: return "blue";
    case Marker::Red: return "red";
    case Marker::Black: return "black";
    default: return "none";
  }
}

namespace {

const char* type_code(Marker m) {
  switch (m) {
    case Marker::White: return "10100";
    case Marker::Green: return "10000";
    case Marker::Blue: return "11000";
    case Marker::Red: return "11100";
    case Marker::Black: return "11110";
    default: return nullptr;
  }
}

constexpr Marker kTypes[] = {Marker::White, Marker::Green, Marker::Blue, Marker::Red, Marker::Black};

bool is_anchor(Marker m) { return m == Marker::Green || m == Marker::Blue; }

}  // namespace

std::string marker_pattern(Marker m, int k) {
  const char* code = type_code(m);
  if (!code) return "";
  return "0" + std::string(k + 1, '1') + code + std::string(k + 1, '1') + "0";
}

std::optional<WindowMatch> detect_marker(const std::string& window, int k) {
  if (static_cast<int>(window.size()) != 2 * k + 9) return std::nullopt;
  std::string rev(window.rbegin(), window.rend());
  for (Marker m : kTypes) {
    auto pat = marker_pattern(m, k);
    if (window == pat) return WindowMatch{m, true};
    if (rev == pat) return WindowMatch{m, false};
  }
  return std::nullopt;
}

MarkerLayout marking(const PortLabeledTree& t, const MarkerParams& p) {
  int n = t.size();
  int L = p.span(), g = p.stride();
  auto ci = diameter_and_center(t);
  MarkerLayout lay;
  lay.rt = root_at(t, ci.root);
  const auto& rt = lay.rt;
  lay.marker.assign(n, Marker::None);
  lay.marker[rt.root] = Marker::White;

  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[rt.order[i]] = i;
  auto leaf = [&](NodeId v) { return t.degree(v) == 1 && v != rt.root; };

  // deepest first; among equal depth the canonical BFS rank decides
  using Item = std::pair<int, int>;
  std::priority_queue<Item> pq;
  std::vector<char> queued(n, 0);
  for (NodeId v = 0; v < n; ++v)
    if (leaf(v)) pq.push({rt.depth[v], -rank[v]}), queued[v] = 1;
  while (!pq.empty()) {
    NodeId v = rt.order[-pq.top().second];
    pq.pop();
    if (rt.depth[v] <= p.tau || L <= 0) continue;
    NodeId a = rt.parent[v];
    bool covered = false;
    for (int d = 1; d < L; ++d, a = rt.parent[a])
      if (is_anchor(lay.marker[a])) {
        covered = true;
        break;
      }
    if (covered) continue;
    NodeId u = a;  // distance L
    lay.marker[u] = Marker::Blue;
    if (!leaf(v)) lay.marker[v] = Marker::Green;
    if (!queued[u]) pq.push({rt.depth[u], -rank[u]}), queued[u] = 1;
  }

  lay.top.assign(n, -1);
  lay.offset.assign(n, -1);
  lay.first_kind.assign(n, 0);
  lay.sk_reach.assign(n, -1);
  lay.black_above.assign(n, -1);
  lay.first_black.assign(n, -1);
  lay.subtree_depth.assign(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    NodeId v = rt.order[i];
    lay.subtree_depth[v] = std::max(lay.subtree_depth[v], rt.depth[v]);
    if (v != rt.root) lay.subtree_depth[rt.parent[v]] = std::max(lay.subtree_depth[rt.parent[v]], lay.subtree_depth[v]);
  }
  if (L <= 0) return lay;

  // regions below every anchor, in BFS order so bookkeeping is deterministic
  for (NodeId u : rt.order) {
    if (!is_anchor(lay.marker[u]) || leaf(u)) continue;
    std::vector<NodeId> pre;  // region nodes in preorder
    std::vector<NodeId> stack;
    for (int q = 0; q < t.degree(u); ++q) {
      NodeId c = t.neighbor(u, q);
      if (c != rt.parent[u]) stack.push_back(c);
    }
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      int o = rt.depth[x] - rt.depth[u];
      bool blue_end = o < L && lay.marker[x] == Marker::Blue;
      if (blue_end) {
        lay.sk_reach[x] = o;  // recorded for the parent, the node itself belongs to its own region
        pre.push_back(x);
        continue;
      }
      if (lay.top[x] >= 0) throw std::logic_error("regions overlap");
      lay.top[x] = u;
      lay.offset[x] = o;
      pre.push_back(x);
      if (o == L) {
        if (lay.marker[x] == Marker::Green || leaf(x)) lay.first_kind[x] = 1;
        continue;
      }
      if (leaf(x)) {
        lay.sk_reach[x] = o;
        continue;
      }
      for (int q = 0; q < t.degree(x); ++q) {
        NodeId c = t.neighbor(x, q);
        if (c != rt.parent[x]) stack.push_back(c);
      }
    }
    // aggregate reach and kind bottom-up
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
      NodeId x = *it;
      NodeId par = rt.parent[x];
      if (par == u) continue;
      if (lay.first_kind[x]) lay.first_kind[par] = 1;
      lay.sk_reach[par] = std::max(lay.sk_reach[par], lay.sk_reach[x]);
    }
    // blue ends keep their own reach value out of later passes
    for (NodeId x : pre)
      if (lay.top[x] != u) lay.sk_reach[x] = -1;

    for (NodeId x : pre) {
      if (lay.top[x] != u) continue;
      int o = lay.offset[x];
      if (o > 0 && o < L && o % g == 0) {
        if (lay.first_kind[x])
          lay.marker[x] = Marker::Red;
        else if (lay.sk_reach[x] - o >= 2 * p.k + 10)
          lay.marker[x] = Marker::Black;
      }
    }
    for (NodeId x : pre) {
      if (lay.top[x] != u) continue;
      NodeId par = rt.parent[x];
      int ab = par == u ? -1 : lay.black_above[par];
      int fb = par == u ? -1 : lay.first_black[par];
      if (lay.marker[x] == Marker::Black) {
        ab = lay.offset[x];
        if (fb < 0) fb = lay.offset[x] / g;
      }
      lay.black_above[x] = ab;
      lay.first_black[x] = fb;
    }
  }
  return lay;
}

std::string assign_marker_bits(const PortLabeledTree& t, const MarkerLayout& lay, const MarkerParams& p) {
  int n = t.size();
  int W = p.window(), g = p.stride();
  std::string bits(n, '\0');
  std::vector<NodeId> owner(n, -1);
  auto put = [&](NodeId x, NodeId who, char c) {
    if (owner[x] >= 0 && owner[x] != who)
      throw MarkerError(MarkerError::Kind::OverlapViolation,
                        "node " + std::to_string(x) + " lies in two marker windows");
    owner[x] = who;
    bits[x] = c;
  };
  const auto& rt = lay.rt;
  auto white = marker_pattern(Marker::White, p.k);
  for (NodeId x = 0; x < n; ++x)
    if (rt.depth[x] < W && lay.subtree_depth[x] >= W - 1) put(x, rt.root, white[rt.depth[x]]);
  // too shallow for any window: a lone 1 at the root
  if (lay.subtree_depth[rt.root] < W - 1) put(rt.root, rt.root, '1');

  auto red = marker_pattern(Marker::Red, p.k);
  auto black = marker_pattern(Marker::Black, p.k);
  for (NodeId x = 0; x < n; ++x) {
    if (is_anchor(lay.marker[x]) && t.degree(x) > 1 && x != rt.root)
      put(x, x, marker_pattern(lay.marker[x], p.k)[0]);
  }
  for (NodeId x = 0; x < n; ++x) {
    NodeId u = lay.top[x];
    if (u < 0) continue;
    int o = lay.offset[x];
    if (lay.first_kind[x]) {
      if (o < W) {
        put(x, u, marker_pattern(lay.marker[u], p.k)[o]);
      } else {
        int i = o / g, r = o % g;
        if (i >= 1 && i <= p.k - 3 && r < W) {
          NodeId a = x;
          for (int s = 0; s < r; ++s) a = rt.parent[a];
          put(x, a, red[r]);
        }
      }
    } else if (lay.black_above[x] >= 0) {
      int b = lay.black_above[x];
      if (o - b < W && lay.sk_reach[x] >= b + 2 * p.k + 10) {
        NodeId a = x;
        for (int s = 0; s < o - b; ++s) a = rt.parent[a];
        put(x, a, black[o - b]);
      }
    }
  }
  return bits;
}

AdviceAssignment coding_payload(const PortLabeledTree& t, const MarkerLayout& lay, const std::string& marker_bits,
                                const MarkerParams& p, PayloadReport* report) {
  int n = t.size();
  int W = p.window(), g = p.stride(), q = p.piece(), cap = p.capacity();
  PayloadReport rep;
  rep.capacity = cap;
  std::map<NodeId, std::string> content;
  for (NodeId u = 0; u < n; ++u) {
    if (!is_anchor(lay.marker[u]) || t.degree(u) <= 1) continue;
    auto code = encode_ports(path_to_root(lay.rt, u), p.lambda);
    int sep = static_cast<int>(insert_separators(code, p.k).size());
    ++rep.tops;
    rep.max_separated = std::max(rep.max_separated, sep);
    if (sep > cap) ++rep.capacity_violations;
    // a trailing 1 marks where the code ends inside the zero padding
    auto s = insert_separators(code + "1", p.k);
    if (static_cast<int>(s.size()) > cap) {
      if (report) *report = rep;
      throw MarkerError(MarkerError::Kind::CapacityExceeded,
                        "root path of node " + std::to_string(u) + " needs " + std::to_string(s.size()) +
                            " symbols, capacity " + std::to_string(cap));
    }
    s.resize(cap, '0');
    content.emplace(u, std::move(s));
  }
  if (report) *report = rep;

  AdviceAssignment a;
  a.lambda = p.lambda;
  a.per_node.assign(n, "0");
  for (NodeId x = 0; x < n; ++x) {
    if (marker_bits[x]) {
      a.per_node[x] = std::string(1, marker_bits[x]);
      continue;
    }
    NodeId u = lay.top[x];
    if (u < 0) continue;
    int o = lay.offset[x];
    int i = o / g, pos = o % g - W;
    if (pos < 0) continue;
    const auto& c = content.at(u);
    if (lay.first_kind[x]) {
      if (i <= p.k - 3) a.per_node[x] = std::string(1, c[i * q + pos]);
    } else if (lay.sk_reach[x] >= 0 && lay.first_black[x] >= 0) {
      int piece = p.k - 2 - (i - lay.first_black[x]);  // pieces counted from 1, filled from the last
      if (piece >= 1) a.per_node[x] = std::string(1, c[(piece - 1) * q + pos]);
    }
  }
  return a;
}

AdviceAssignment marker_advice(const PortLabeledTree& t, const MarkerParams& p, PayloadReport* report) {
  auto lay = marking(t, p);
  auto bits = assign_marker_bits(t, lay, p);
  return coding_payload(t, lay, bits, p, report);
}

// ---------------------------------------------------------------- ball side

namespace {

struct Sighting {
  int top;
  int second;
  Marker type;
};

class Reader {
 public:
  Reader(const LabeledBall& b, const MarkerParams& p) : b_(b), p_(p), k_(p.k) {
    sym_.resize(b.nodes.size());
    for (std::size_t i = 0; i < b.nodes.size(); ++i) {
      const auto& s = b.advice(static_cast<int>(i));
      if (s.size() != 1) throw SchemeError("advice is not a single symbol");
      sym_[i] = s[0];
    }
    tops_.resize(b.nodes.size());
  }

  template <class F>
  void for_each_neighbor(int x, F&& f) const {
    for (int q = 0; q < b_.nodes[x].degree; ++q) {
      int y = b_.neighbor(x, q);
      if (y >= 0) f(y, q);
    }
  }

  void scan(bool white_only) {
    std::set<std::tuple<int, int, int>> seen;
    for (Marker m : kTypes) {
      if (white_only != (m == Marker::White)) continue;
      std::string code = type_code(m);
      std::string up = std::string{code[1], code[0]} + std::string(k_ + 1, '1') + "0";
      std::string down = std::string{code[3], code[4]} + std::string(k_ + 1, '1') + "0";
      for (int y = 0; y < static_cast<int>(sym_.size()); ++y) {
        if (sym_[y] != code[2]) continue;
        for_each_neighbor(y, [&](int a, int) {
          std::vector<std::pair<int, int>> ends;
          arm(y, a, up, 0, -1, &ends);
          if (ends.empty()) return;
          bool below = false;
          for_each_neighbor(y, [&](int c, int) {
            if (!below && c != a) below = arm_exists(y, c, down, 0);
          });
          if (!below) return;
          for (auto [top, second] : ends)
            if (seen.insert({top, second, static_cast<int>(m)}).second) {
              sightings_.push_back({top, second, m});
              tops_[top].push_back({top, second, m});
            }
        });
      }
    }
  }

  const std::vector<Sighting>& sightings() const { return sightings_; }

  bool has(int x, Marker m, int not_second = -2) const {
    for (auto& s : tops_[x])
      if (s.type == m && s.second != not_second) return true;
    return false;
  }
  bool anchor_top(int x) const { return has(x, Marker::Blue) || has(x, Marker::Green); }
  std::vector<int> seconds(int x, Marker m) const {
    std::vector<int> out;
    for (auto& s : tops_[x])
      if (s.type == m) out.push_back(s.second);
    return out;
  }

  char sym(int x) const { return sym_[x]; }
  const LabeledBall& ball() const { return b_; }

  // downward paths from an anchor top that carry the anchor window and the red windows;
  // the callback gets each path of length `target` and returns true to stop
  void full_paths(int u, Marker type, int target, const std::function<bool(const std::vector<int>&)>& cb) const {
    int W = p_.window(), g = p_.stride(), L = p_.span();
    auto own = marker_pattern(type, k_);
    auto red = marker_pattern(Marker::Red, k_);
    std::vector<int> path{u};
    bool stop = false;
    std::function<void(int, int)> go = [&](int prev, int x) {
      if (stop) return;
      int o = static_cast<int>(path.size());
      if (o < W && sym_[x] != own[o]) return;
      int i = o / g, r = o % g;
      if (i >= 1 && i <= k_ - 3 && r < W) {
        if (sym_[x] != red[r]) return;
        if (r == 0 && o < target && !has(x, Marker::Red)) return;
      }
      if (o < L && anchor_top(x)) return;
      path.push_back(x);
      if (o == target) {
        stop = cb(path);
      } else if (!b_.frontier(x)) {
        for_each_neighbor(x, [&](int y, int) {
          if (y != prev) go(x, y);
        });
      }
      path.pop_back();
    };
    for (int s : seconds(u, type)) go(u, s);
  }

  std::string read_pieces(const std::vector<int>& path, int from_piece, int to_piece) const {
    int W = p_.window(), g = p_.stride();
    std::string s;
    for (int i = from_piece; i < to_piece; ++i)
      for (int o = i * g + W; o < (i + 1) * g; ++o) s += sym_[path[o]];
    return s;
  }

 private:
  void arm(int prev, int x, const std::string& pat, int idx, int second, std::vector<std::pair<int, int>>* ends) const {
    if (sym_[x] != pat[idx]) return;
    if (idx == k_ + 2) second = x;
    if (idx + 1 == static_cast<int>(pat.size())) {
      ends->push_back({x, second});
      return;
    }
    if (b_.frontier(x)) return;
    for_each_neighbor(x, [&](int y, int) {
      if (y != prev) arm(x, y, pat, idx + 1, second, ends);
    });
  }

  bool arm_exists(int prev, int x, const std::string& pat, int idx) const {
    if (sym_[x] != pat[idx]) return false;
    if (idx + 1 == static_cast<int>(pat.size())) return true;
    if (b_.frontier(x)) return false;
    bool ok = false;
    for_each_neighbor(x, [&](int y, int) {
      if (!ok && y != prev) ok = arm_exists(x, y, pat, idx + 1);
    });
    return ok;
  }

  const LabeledBall& b_;
  const MarkerParams& p_;
  int k_;
  std::string sym_;
  std::vector<Sighting> sightings_;
  std::vector<std::vector<Sighting>> tops_;
};

std::optional<PathCode> decode_content(std::string s, int k, int lambda) {
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (s.empty()) return std::nullopt;
  try {
    auto x = remove_separators(s, k);
    if (x.empty() || x.back() != '1') return std::nullopt;
    x.pop_back();
    return decode_ports(x, lambda);
  } catch (const CodecError&) {
    return std::nullopt;
  }
}

// ball nodes from u up to the center
std::vector<int> climb(const LabeledBall& b, int u) {
  std::vector<int> q;
  for (int x = u; x != 0; x = b.nodes[x].parent) q.push_back(x);
  q.push_back(0);
  return q;
}

// follow pi from Q[0] while it retraces Q, then leave through the ball center's path
PathCode splice(const LabeledBall& b, const std::vector<int>& Q, const PathCode& pi) {
  std::size_t j = 0;
  while (j < pi.size() && j + 1 < Q.size() && b.neighbor(Q[j], pi[j]) == Q[j + 1]) ++j;
  PathCode out = b.path_from_center(Q[j]);
  out.insert(out.end(), pi.begin() + static_cast<long>(j), pi.end());
  return out;
}

int port_to(const LabeledBall& b, int x, int y) {
  for (int q = 0; q < b.nodes[x].degree; ++q)
    if (b.neighbor(x, q) == y) return q;
  return -1;
}

// pi read from t must stay simple as far as the ball shows it; rejects the spurious top of a forked window
bool walk_fits(const LabeledBall& b, int t, const PathCode& pi, const std::vector<int>& window_seconds) {
  for (int w : window_seconds)
    if (!pi.empty() && pi[0] == port_to(b, t, w)) return false;
  int prev = -1, x = t;
  for (int port : pi) {
    if (port < 0 || port >= b.nodes[x].degree) return false;
    int y = b.neighbor(x, port);
    if (y < 0) return true;
    if (y == prev) return false;
    prev = x;
    x = y;
  }
  return true;
}

// every port of every ball node leads somewhere inside the ball
bool whole_tree(const LabeledBall& b) {
  for (int i = 0; i < static_cast<int>(b.nodes.size()); ++i)
    for (int q = 0; q < b.nodes[i].degree; ++q)
      if (b.neighbor(i, q) < 0) return false;
  return true;
}

std::vector<int> ball_distances(const LabeledBall& b, int from) {
  std::vector<int> dist(b.nodes.size(), -1);
  std::vector<int> queue{from};
  dist[from] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int x = queue[h];
    for (int q = 0; q < b.nodes[x].degree; ++q) {
      int y = b.neighbor(x, q);
      if (y >= 0 && dist[y] < 0) dist[y] = dist[x] + 1, queue.push_back(y);
    }
  }
  return dist;
}

// one or two central nodes of a ball that holds the whole tree
std::vector<int> ball_centers(const LabeledBall& b) {
  auto far = [](const std::vector<int>& d) { return static_cast<int>(std::max_element(d.begin(), d.end()) - d.begin()); };
  int a = far(ball_distances(b, 0));
  auto da = ball_distances(b, a);
  int c = far(da), D = da[c];
  auto dc = ball_distances(b, c);
  std::vector<int> out;
  for (int x = 0; x < static_cast<int>(b.nodes.size()); ++x)
    if (da[x] + dc[x] == D && (da[x] == D / 2 || da[x] == (D + 1) / 2)) out.push_back(x);
  return out;
}

// A white window can fork at its first 1: any other c1 neighbor of that node reads as a top too.
// Those fake tops sit below the window with no other 1 around them, while the root, a center, has a
// window in at least two branches.
std::optional<int> white_root(const LabeledBall& b, const Reader& rd) {
  std::vector<int> cand;
  for (auto& s : rd.sightings())
    if (s.type == Marker::White && std::find(cand.begin(), cand.end(), s.top) == cand.end()) cand.push_back(s.top);
  bool whole = whole_tree(b);
  if (cand.empty()) {
    if (!whole) return std::nullopt;
    int one = -1, count = 0;
    for (int x = 0; x < static_cast<int>(b.nodes.size()); ++x)
      if (rd.sym(x) == '1') ++count, one = x;
    if (count == 1) return one;
    return std::nullopt;
  }
  if (whole) {
    auto cs = ball_centers(b);
    std::erase_if(cand, [&](int x) { return std::find(cs.begin(), cs.end(), x) == cs.end(); });
  }
  std::vector<int> strong;
  for (int x : cand) {
    if (b.frontier(x)) continue;
    int ones = 0;
    rd.for_each_neighbor(x, [&](int y, int) { ones += rd.sym(y) == '1'; });
    if (ones >= 2) strong.push_back(x);
  }
  if (strong.size() == 1) return strong[0];
  if (strong.empty() && cand.size() == 1) return cand[0];
  return std::nullopt;
}

}  // namespace

PathCode decode_payload(const LabeledBall& ball, const MarkerParams& p, DecodeCase* used) {
  Reader rd(ball, p);
  rd.scan(true);
  if (auto r = white_root(ball, rd)) {
    if (used) *used = DecodeCase::White;
    return ball.path_from_center(*r);
  }
  rd.scan(false);

  int g = p.stride(), L = p.span(), W = p.window(), k = p.k;
  std::vector<std::pair<int, Sighting>> anchors;
  {
    std::set<int> seen;
    for (auto& s : rd.sightings())
      if (is_anchor(s.type) && seen.insert(s.top).second) anchors.push_back({ball.nodes[s.top].depth, s});
    std::sort(anchors.begin(), anchors.end(),
              [](auto& a, auto& b) { return std::tie(a.first, a.second.top) < std::tie(b.first, b.second.top); });
  }

  // a full path below some visible anchor carries that anchor's root path
  for (auto& [d, s] : anchors) {
    std::optional<PathCode> pi;
    rd.full_paths(s.top, s.type, L, [&](const std::vector<int>& path) {
      int end = path.back();
      bool ok = ball.nodes[end].degree == 1 || rd.has(end, Marker::Green, path[L - 1]);
      if (!ok) return false;
      pi = decode_content(rd.read_pieces(path, 0, k - 2), k, p.lambda);
      if (pi && !walk_fits(ball, s.top, *pi, rd.seconds(s.top, s.type))) pi.reset();
      return pi.has_value();
    });
    if (pi) {
      if (used) *used = DecodeCase::FullPath;
      return splice(ball, climb(ball, s.top), *pi);
    }
  }

  // nearest anchor above: tail pieces from the black segments on the way down, head pieces from a full path
  for (auto& [d, s] : anchors) {
    if (d < 1 || d >= L) continue;
    int u = s.top;
    auto Q = climb(ball, u);  // Q[0] = u, Q[d] = center
    bool inner = false;
    // a window can fork at its second node; a fork pointing back up Q is not an anchor
    for (int j = 1; j < d && !inner; ++j)
      inner = rd.has(Q[j], Marker::Blue, Q[j - 1]) || rd.has(Q[j], Marker::Green, Q[j - 1]);
    if (inner) continue;
    int state = 0, h = 0, fb = -1;
    bool bad = false;
    for (int i = 1; i * g <= d && !bad; ++i) {
      int x = Q[i * g], back = Q[i * g - 1];
      int cls = rd.has(x, Marker::Red, back) ? 0 : rd.has(x, Marker::Black, back) ? 1 : 2;
      if (cls < state) bad = true;
      state = cls;
      if (cls == 1) {
        if (fb < 0) fb = i;
        ++h;
      }
    }
    if (bad) continue;
    int need = std::min(k - 2, k - 1 - h);
    std::string tail;
    for (int j = h - 2; j >= 0; --j)
      for (int o = (fb + j) * g + W; o < (fb + j + 1) * g; ++o) tail += rd.sym(Q[o]);
    int up_port = port_to(ball, u, Q[1]);
    auto window_seconds = rd.seconds(u, s.type);
    std::set<std::string> tried;
    std::optional<PathCode> pi;
    rd.full_paths(u, s.type, need * g - 1, [&](const std::vector<int>& path) {
      auto head = rd.read_pieces(path, 0, need);
      if (!tried.insert(head).second) return false;
      auto cand = decode_content(head + tail, k, p.lambda);
      if (!cand || cand->empty() || (*cand)[0] == up_port) return false;
      if (!walk_fits(ball, u, *cand, window_seconds)) return false;
      pi = cand;
      return true;
    });
    if (pi) {
      if (used) *used = DecodeCase::Splice;
      return splice(ball, Q, *pi);
    }
  }
  throw SchemeError("no marker structure decodes from this ball");
}

}  // namespace leader
