#include "leader/colored_map.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "leader/codec.hpp"

namespace leader {

std::string serialize_map(const ColoredMap& m) {
  std::vector<std::uint64_t> seq;
  seq.push_back(static_cast<std::uint64_t>(m.tree.size()));
  seq.push_back(static_cast<std::uint64_t>(m.root));
  for (auto& e : m.tree.edges()) {
    seq.push_back(e.u);
    seq.push_back(e.pu);
    seq.push_back(e.v);
    seq.push_back(e.pv);
  }
  for (int c : m.color) seq.push_back(static_cast<std::uint64_t>(c));
  return encode_sequence(seq, 2);
}

ColoredMap parse_map(const std::string& s) {
  std::vector<std::uint64_t> seq;
  try {
    seq = decode_sequence(s, 2);
  } catch (const CodecError& e) {
    throw SchemeError(std::string("map does not decode: ") + e.what());
  }
  if (seq.size() < 2) throw SchemeError("map too short");
  std::size_t n = seq[0];
  if (n == 0 || seq.size() != 2 + 4 * (n - 1) + n) throw SchemeError("map length mismatch");
  std::vector<Edge> es;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t b = 2 + 4 * i;
    es.push_back({static_cast<NodeId>(seq[b]), static_cast<int>(seq[b + 1]), static_cast<NodeId>(seq[b + 2]),
                  static_cast<int>(seq[b + 3])});
  }
  ColoredMap m;
  try {
    m.tree = build_tree(es, static_cast<int>(n));
  } catch (const TreeError& e) {
    throw SchemeError(std::string("map is not a tree: ") + e.what());
  }
  m.root = static_cast<NodeId>(seq[1]);
  if (m.root < 0 || m.root >= static_cast<NodeId>(n)) throw SchemeError("map root out of range");
  for (std::size_t i = 0; i < n; ++i) m.color.push_back(static_cast<int>(seq[2 + 4 * (n - 1) + i]));
  return m;
}

namespace {

AdviceAssignment color_advice(const std::vector<int>& colors) {
  AdviceAssignment a;
  for (int c : colors) a.per_node.push_back(std::string(1, static_cast<char>('0' + c)));
  return a;
}

std::vector<std::string> ball_keys(const PortLabeledTree& t, const std::vector<int>& colors, int tau) {
  AdviceIndex idx(color_advice(colors));
  std::vector<std::string> keys(t.size());
  for (NodeId v = 0; v < t.size(); ++v) keys[v] = serialize_ball(extract_ball(t, idx, v, tau));
  return keys;
}

struct MapIndex {
  std::unordered_map<std::string, int> cls;
  std::vector<PathCode> path;
  std::vector<char> conflict;
};

std::shared_ptr<const MapIndex> build_index(const std::string& map_str, int tau) {
  auto m = parse_map(map_str);
  auto keys = ball_keys(m.tree, m.color, tau);
  auto rt = root_at(m.tree, m.root);
  auto idx = std::make_shared<MapIndex>();
  for (NodeId v = 0; v < m.tree.size(); ++v) {
    auto p = path_to_root(rt, v);
    auto [it, fresh] = idx->cls.emplace(keys[v], static_cast<int>(idx->path.size()));
    if (fresh) {
      idx->path.push_back(p);
      idx->conflict.push_back(0);
    } else if (idx->path[it->second] != p) {
      idx->conflict[it->second] = 1;
    }
  }
  return idx;
}

std::shared_ptr<const MapIndex> cached_index(const std::string& map_str, int tau) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const MapIndex>> cache;
  std::string key = std::to_string(tau) + "#" + map_str;
  {
    std::lock_guard<std::mutex> g(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto idx = build_index(map_str, tau);
  std::lock_guard<std::mutex> g(mu);
  if (cache.size() > 8) cache.clear();
  cache.emplace(key, idx);
  return idx;
}

}  // namespace

std::optional<std::vector<PathCode>> identification_paths(const PortLabeledTree& t, const std::vector<int>& colors,
                                                          int tau, NodeId leader) {
  auto keys = ball_keys(t, colors, tau);
  auto rt = root_at(t, leader);
  std::unordered_map<std::string, NodeId> rep;
  std::vector<PathCode> out(t.size());
  for (NodeId v = 0; v < t.size(); ++v) {
    out[v] = path_to_root(rt, v);
    auto [it, fresh] = rep.emplace(keys[v], v);
    if (!fresh && out[it->second] != out[v]) return std::nullopt;
  }
  return out;
}

AdviceAssignment colored_map_advice(const PortLabeledTree& t, const std::vector<int>& colors, int tau, int lambda,
                                    NodeId leader) {
  if (static_cast<int>(colors.size()) != t.size()) throw SchemeError("coloring size mismatch");
  for (int c : colors)
    if (c < 0 || c >= lambda) throw SchemeError("color outside the alphabet");
  ColoredMap m{t, colors, leader >= 0 ? leader : diameter_and_center(t).root};
  if (!identification_paths(t, colors, tau, m.root))
    throw IdentificationFailure("equal balls need different root paths");
  auto map_str = serialize_map(m);
  AdviceAssignment a;
  a.lambda = lambda;
  a.per_node.reserve(t.size());
  for (int c : colors) a.per_node.push_back(static_cast<char>('0' + c) + map_str);
  return a;
}

PathCode elect_colored_map(const LabeledBall& ball) {
  const auto& own = ball.advice(0);
  if (own.size() < 2) throw SchemeError("advice carries no map");
  auto idx = cached_index(own.substr(1), ball.radius);
  // reduce every visible advice string to its color digit
  auto tab = std::make_shared<std::vector<AdviceString>>();
  for (auto& s : *ball.table) tab->push_back(s.empty() ? std::string() : s.substr(0, 1));
  LabeledBall colored = ball;
  colored.table = tab;
  auto it = idx->cls.find(serialize_ball(colored));
  if (it == idx->cls.end()) throw SchemeError("ball matches no map position");
  if (idx->conflict[it->second]) throw SchemeError("ambiguous map position");
  return idx->path[it->second];
}

std::optional<XiCertificate> find_certificate(const PortLabeledTree& t, int lambda, int tau, NodeId only_leader) {
  if (lambda < 2) throw SchemeError("InvalidLambda: lambda must be at least 2");
  int n = t.size();
  if (n > 16) throw SchemeError("tree too large for exhaustive search");
  std::vector<std::vector<PathCode>> paths(n);
  for (NodeId l = 0; l < n; ++l) {
    auto rt = root_at(t, l);
    for (NodeId v = 0; v < n; ++v) paths[l].push_back(path_to_root(rt, v));
  }
  std::vector<int> c(n, 0), mx(n, 0);  // mx[i] = max color among c[0..i]
  while (true) {
    auto keys = ball_keys(t, c, tau);
    std::unordered_map<std::string, NodeId> rep_of;
    std::vector<NodeId> rep(n);
    for (NodeId v = 0; v < n; ++v) rep[v] = rep_of.emplace(keys[v], v).first->second;
    for (NodeId l = 0; l < n; ++l) {
      if (only_leader >= 0 && l != only_leader) continue;
      bool ok = true;
      for (NodeId v = 0; v < n && ok; ++v) ok = paths[l][v] == paths[l][rep[v]];
      if (ok) return XiCertificate{tau, c, l, paths[l]};
    }
    // next restricted growth string with at most lambda colors
    int i = n - 1;
    while (i > 0 && (c[i] > mx[i - 1] || c[i] + 1 >= lambda)) --i;
    if (i <= 0) break;
    ++c[i];
    mx[i] = std::max(mx[i - 1], c[i]);
    for (int j = i + 1; j < n; ++j) c[j] = 0, mx[j] = mx[i];
  }
  return std::nullopt;
}

std::optional<XiCertificate> election_index(const PortLabeledTree& t, int lambda, int tau_max) {
  if (lambda < 2) throw SchemeError("InvalidLambda: lambda must be at least 2");
  for (int tau = 0; tau <= tau_max; ++tau)
    if (auto cert = find_certificate(t, lambda, tau)) return cert;
  return std::nullopt;
}

}  // namespace leader
