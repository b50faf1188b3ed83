#include "leader/families.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace leader {

namespace {

int ceil_div(long long a, long long b) { return static_cast<int>((a + b - 1) / b); }

using K = FamilyError::Kind;

// adjacency under construction: nbr[v][port] = neighbor
struct Builder {
  std::vector<std::vector<NodeId>> nbr;
  std::vector<NodeInfo> info;

  NodeId add(NodeInfo ni = {}) {
    nbr.emplace_back();
    info.push_back(ni);
    return static_cast<NodeId>(nbr.size() - 1);
  }
  void set_port(NodeId v, int port, NodeId w) {
    if (static_cast<int>(nbr[v].size()) <= port) nbr[v].resize(port + 1, -1);
    nbr[v][port] = w;
  }
  int attach_leaf(NodeId v, NodeInfo ni) {
    NodeId l = add(ni);
    int port = static_cast<int>(nbr[v].size());
    nbr[v].push_back(l);
    nbr[l].push_back(v);
    return port;
  }
  PortLabeledTree build() const {
    std::vector<Edge> es;
    for (NodeId v = 0; v < static_cast<NodeId>(nbr.size()); ++v)
      for (int p = 0; p < static_cast<int>(nbr[v].size()); ++p) {
        NodeId w = nbr[v][p];
        if (w < 0) throw std::logic_error("port hole in family builder");
        if (v < w) {
          int q = -1;
          for (int s = 0; s < static_cast<int>(nbr[w].size()); ++s)
            if (nbr[w][s] == v) q = s;
          es.push_back({v, p, w, q});
        }
      }
    return build_tree(es, static_cast<int>(nbr.size()));
  }
};

std::vector<int> lex_string(long long index, int len, int lambda) {
  std::vector<int> s(len, 0);
  for (int d = len - 1; d >= 0; --d) {
    s[d] = static_cast<int>(index % lambda);
    index /= lambda;
  }
  return s;
}

}  // namespace

double FamilySide::log2_members() const {
  double s = 0;
  for (auto& site : sites) s += std::log2(static_cast<double>(site.choices.size()));
  return s;
}

PortLabeledTree TreeFamily::member(int side, const std::vector<int>& values) const {
  const auto& sd = sides.at(side);
  if (values.size() != sd.sites.size()) throw FamilyError(K::BadMember, "descriptor length mismatch");
  std::map<NodeId, std::pair<int, int>> swap;
  for (std::size_t s = 0; s < values.size(); ++s) {
    const auto& site = sd.sites[s];
    bool ok = false;
    for (int c : site.choices) ok = ok || c == values[s];
    if (!ok) throw FamilyError(K::BadMember, "value " + std::to_string(values[s]) + " not allowed at site " + std::to_string(s));
    if (values[s] != site.base_port) swap[site.node] = {site.base_port, values[s]};
  }
  auto es = base.edges();
  auto remap = [&](NodeId v, int p) {
    auto it = swap.find(v);
    if (it == swap.end()) return p;
    if (p == it->second.first) return it->second.second;
    if (p == it->second.second) return it->second.first;
    return p;
  };
  for (auto& e : es) {
    e.pu = remap(e.u, e.pu);
    e.pv = remap(e.v, e.pv);
  }
  return build_tree(es, base.size());
}

int LineFamilyParams::z() const {
  int m = (D + 1) / 2 - tau;
  return m > 0 ? ceil_div(n_prime - 2LL * tau, 2LL * m) : 0;
}

TreeFamily build_line_family(const LineFamilyParams& p) {
  if (!(p.n_prime > p.D && p.D >= 3)) throw FamilyError(K::BadParams, "need n' > D >= 3");
  int half = (p.D + 1) / 2;
  if (p.tau < 0 || p.tau >= half) throw FamilyError(K::BadParams, "need 0 <= tau < ceil(D/2)");
  int z = p.z();
  Builder b;
  for (int i = 0; i <= p.D; ++i) b.add();
  // edge (v_i, v_i+1) carries 0 at v_i and 1 at v_i+1; the far endpoint keeps port 0 as a leaf
  for (int i = 0; i < p.D; ++i) {
    b.set_port(i, 0, i + 1);
    b.set_port(i + 1, i + 1 == p.D ? 0 : 1, i);
  }
  std::vector<std::vector<int>> leaf_ports(p.D + 1);
  for (int i = p.tau; i <= half - 1; ++i)
    for (int v : {i, p.D - i})
      for (int c = 0; c < z - 1; ++c) leaf_ports[v].push_back(b.attach_leaf(v, {NodeRole::White}));

  TreeFamily fam;
  fam.base = b.build();
  fam.D = p.D;
  fam.root = diameter_and_center(fam.base).root;
  FamilySide xs, ys;
  for (int i = 1; i <= half - p.tau; ++i) {
    NodeId v = p.tau + i - 1;
    SwapSite s{v, 0, {0}};
    for (int q : leaf_ports[v]) s.choices.push_back(q);
    xs.sites.push_back(s);
    NodeId w = p.D - p.tau - i + 1;
    int base = w == p.D ? 0 : 1;
    SwapSite t{w, base, {base}};
    for (int q : leaf_ports[w]) t.choices.push_back(q);
    ys.sites.push_back(t);
  }
  xs.observers = {0};
  ys.observers = {p.D};
  fam.sides = {xs, ys};
  return fam;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Small: return "small";
    case Regime::Medium: return "medium";
    default: return "large";
  }
}

int GeneralFamilyParams::y() const { return (D - D % 2) / 2 - tau - 1; }
int GeneralFamilyParams::grey_count() const { return D >= 1 ? static_cast<int>(std::floor(std::log2(D))) : 0; }

GeneralFamilyParams paper_general_params(Regime r, int n_prime, int D, double alpha, double eps_or_b) {
  GeneralFamilyParams p;
  p.regime = r;
  p.D = D;
  p.tau = static_cast<int>(std::floor(alpha * D));
  double n = n_prime;
  if (r == Regime::Small) {
    double e = eps_or_b;
    p.k1 = static_cast<int>(std::ceil(std::pow(n, e)));
    p.k2 = 2 * static_cast<int>(std::ceil(std::pow(n, 1 - 4 * e) / 2));
    p.z = static_cast<int>(std::ceil(2 * (n - std::pow(n, 1 - e)) / (std::pow(n, 1 - 3 * e) * (1 - 2 * alpha) * D)));
    p.zp = static_cast<int>(std::floor((1 - 3 * e) * std::log2(n)));
  } else if (r == Regime::Medium) {
    double b = eps_or_b;
    p.k1 = 1;
    p.k2 = 2 * static_cast<int>(std::ceil(b * n / D));
    p.z = static_cast<int>(std::ceil((n - b * n) / (p.k2 * (D / 2.0 - p.tau - 1))));
    p.zp = 0;
  } else {
    p.k1 = 1;
    p.k2 = 2;
    p.z = ceil_div(n_prime - 2LL * p.tau, 2LL * ((D + 1) / 2 - p.tau));
    p.zp = 0;
  }
  return p;
}

TreeFamily build_general_family(const GeneralFamilyParams& p) {
  if (p.tau <= 2) throw FamilyError(K::BadParams, "construction needs tau > 2");
  if (p.k1 < 1 || p.k2 < 2 || p.k2 % 2) throw FamilyError(K::BadParams, "need k1 >= 1 and even k2 >= 2");
  if (p.z < 1 || p.zp < 0) throw FamilyError(K::BadParams, "need z >= 1 and z' >= 0");
  int half = (p.D - p.D % 2) / 2;
  if (half < p.tau + 1) throw FamilyError(K::BadParams, "need D/2 > tau");
  int stride = p.tau - 2, G = p.grey_count();
  auto on_stride = [&](int k, int off) { return k - off >= stride && (k - off) % stride == 0; };

  Builder b;
  NodeId r = b.add({NodeRole::Root});
  std::vector<std::vector<std::vector<NodeId>>> path(p.k1 + 1, std::vector<std::vector<NodeId>>(p.k2 + 1));
  TreeFamily fam;
  FamilySide xs, ws;
  for (int i = 1; i <= p.k1; ++i)
    for (int j = 1; j <= p.k2; ++j) {
      auto& P = path[i][j];
      for (int k = 0; k < half; ++k) P.push_back(b.add({NodeRole::Path, i, j, k, 0}));
      for (int k = 0; k < half; ++k) {
        NodeId up = k + 1 < half ? P[k + 1] : r;
        b.set_port(P[k], 0, up);
        if (k + 1 < half) b.set_port(P[k + 1], 1, P[k]);
      }
      b.set_port(r, (i - 1) * p.k2 + (j - 1), P[half - 1]);
    }
  for (int i = 1; i <= p.k1; ++i)
    for (int j = 1; j <= p.k2; ++j) {
      auto& P = path[i][j];
      for (int k = 1; k < half; ++k) {
        NodeId v = P[k];
        // next free port in the order white, grey, black, dotted
        if (k >= p.tau + 1)
          for (int c = 0; c < p.z - 1; ++c) b.attach_leaf(v, {NodeRole::White, i, j, k, c + 1});
        if (on_stride(k, 3))
          for (int c = 1; c <= G; ++c) b.attach_leaf(v, {NodeRole::Grey, i, j, k, c});
        if (on_stride(k, 2))
          for (int c = 1; c <= i - 1; ++c) b.attach_leaf(v, {NodeRole::Black, i, j, k, c});
        if (on_stride(k, 1))
          for (int c = 1; c <= p.zp; ++c) b.attach_leaf(v, {NodeRole::Dotted, i, j, k, c});
      }
      auto& side = j <= p.k2 / 2 ? xs : ws;
      for (int k = 1; k <= p.y(); ++k) {
        SwapSite s{P[p.tau + k], 0, {0}};
        for (int c = 0; c < p.z - 1; ++c) s.choices.push_back(2 + c);
        side.sites.push_back(s);
      }
      NodeId obs = P[0];
      if (p.D % 2 && i == 1 && j == 1) {
        b.attach_leaf(P[0], {NodeRole::Extra, 1, 1, -1, 0});
        obs = static_cast<NodeId>(b.nbr.size() - 1);
      }
      side.observers.push_back(obs);
    }
  fam.base = b.build();
  fam.info = b.info;
  fam.D = p.D;
  fam.root = r;
  fam.sides = {xs, ws};
  return fam;
}

std::vector<int> witness_coloring(const TreeFamily& fam, const GeneralFamilyParams& p, int lambda) {
  if (p.tau <= 2) throw FamilyError(K::RegimeMismatch, "witness colorings need tau > 2");
  if (lambda < 2) throw FamilyError(K::RegimeMismatch, "need at least two colors");
  if (fam.info.size() != static_cast<std::size_t>(fam.base.size()))
    throw FamilyError(K::RegimeMismatch, "not a general family");
  int half = (p.D - p.D % 2) / 2;
  int G = p.grey_count();
  int period = p.tau - 2;
  if (p.regime == Regime::Large && (p.k1 != 1 || p.k2 != 2))
    throw FamilyError(K::RegimeMismatch, "large regime uses k1 = 1, k2 = 2");
  if (p.regime == Regime::Medium && p.k1 != 1) throw FamilyError(K::RegimeMismatch, "medium regime uses k1 = 1");
  if (p.regime == Regime::Medium && std::pow(lambda, period) < p.k2)
    throw FamilyError(K::RegimeMismatch, "too few strings of length tau-2 for k2 paths");
  if (p.regime == Regime::Small && std::pow(lambda, p.zp) < p.k2)
    throw FamilyError(K::RegimeMismatch, "too few dotted strings for k2 paths");

  std::vector<int> f(fam.base.size(), 0);
  for (NodeId v = 0; v < fam.base.size(); ++v) {
    const auto& ni = fam.info[v];
    switch (ni.role) {
      case NodeRole::Grey: {
        int d = half - ni.k;  // distance of the anchor from r, most significant bit first
        f[v] = (d >> (G - ni.slot)) & 1;
        break;
      }
      case NodeRole::Dotted:
        if (p.regime == Regime::Small) f[v] = lex_string(ni.j - 1, p.zp, lambda)[ni.slot - 1];
        break;
      case NodeRole::Path:
        if (p.regime == Regime::Medium && ni.k >= 3)
          f[v] = lex_string(ni.j - 1, period, lambda)[(ni.k - 3) % period];
        else if (p.regime == Regime::Large)
          f[v] = ni.j == 2 ? 1 : 0;
        break;
      default:
        break;
    }
  }
  return f;
}

std::optional<PigeonholeWitness> pigeonhole_check(const TreeFamily& fam, int p, int lambda, int tau,
                                                  long long member_cap) {
  if (fam.sides.empty()) return std::nullopt;
  const auto& side = fam.sides[0];
  std::size_t m = side.sites.size();
  AdviceAssignment empty;
  empty.lambda = lambda;
  empty.per_node.assign(fam.base.size(), "");
  AdviceIndex idx(empty);

  std::map<std::string, std::pair<std::vector<int>, long long>> classes;
  std::vector<std::size_t> pos(m, 0);
  PigeonholeWitness w;
  bool found = false;
  long long ball_nodes = 0;
  for (long long count = 0; count < member_cap; ++count) {
    std::vector<int> vals(m);
    for (std::size_t s = 0; s < m; ++s) vals[s] = side.sites[s].choices[pos[s]];
    auto t = fam.member(0, vals);
    std::string key;
    long long nodes = 0;
    for (NodeId o : side.observers) {
      auto b = extract_ball(t, idx, o, tau);
      nodes += static_cast<long long>(b.nodes.size());
      key += serialize_ball(b);
      key += '#';
    }
    ball_nodes = nodes;
    ++w.members_examined;
    auto [it, fresh] = classes.try_emplace(key, vals, 0);
    ++it->second.second;
    w.largest_class = std::max(w.largest_class, it->second.second);
    if (!fresh && !found) {
      auto t0 = fam.member(0, it->second.first);
      for (NodeId o : side.observers) {
        auto a = path_ports(t0, o, fam.root), c = path_ports(t, o, fam.root);
        if (a != c) {
          w.first = it->second.first;
          w.second = vals;
          w.observer = o;
          w.path_first = a;
          w.path_second = c;
          found = true;
          break;
        }
      }
    }
    // odometer over the choices, last site fastest
    std::size_t s = m;
    while (s > 0) {
      --s;
      if (++pos[s] < side.sites[s].choices.size()) break;
      pos[s] = 0;
      if (s == 0) {
        s = m + 1;
        break;
      }
    }
    if (m == 0 || s == m + 1) break;
  }
  // lambda^(p+1) choices per ball node bounds the strings of length <= p
  w.log2_labelings = static_cast<double>(ball_nodes) * (p + 1) * std::log2(static_cast<double>(lambda));
  w.forced = std::log2(static_cast<double>(w.largest_class)) > w.log2_labelings;
  if (!found) return std::nullopt;
  return w;
}

std::string member_descriptor(const std::vector<int>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
  return s;
}

std::vector<int> parse_member_descriptor(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

}  // namespace leader
