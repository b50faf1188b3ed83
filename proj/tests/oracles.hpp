#pragma once
// Reference implementations written straight from the definitions, sharing no code with the library
// beyond the tree accessors.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "leader/tree.hpp"

namespace oracle {

using leader::NodeId;
using leader::PathCode;
using leader::PortLabeledTree;

// radius-tau view from v: (advice, degree) at each node, children in port order with both port numbers
inline std::string ball_key(const PortLabeledTree& t, const std::vector<std::string>& adv, NodeId v, int tau) {
  std::function<std::string(NodeId, NodeId, int)> rec = [&](NodeId x, NodeId from, int r) {
    std::string s = "[" + adv[x] + "|" + std::to_string(t.degree(x));
    if (r > 0)
      for (int p = 0; p < t.degree(x); ++p) {
        NodeId y = t.neighbor(x, p);
        if (y == from) continue;
        s += "(" + std::to_string(p) + ">" + std::to_string(t.back_port(x, p)) + rec(y, x, r - 1) + ")";
      }
    return s + "]";
  };
  return rec(v, -1, tau);
}

// ports of the unique simple path u -> w, by DFS
inline PathCode path(const PortLabeledTree& t, NodeId u, NodeId w) {
  PathCode out;
  std::function<bool(NodeId, NodeId)> dfs = [&](NodeId x, NodeId from) {
    if (x == w) return true;
    for (int p = 0; p < t.degree(x); ++p) {
      NodeId y = t.neighbor(x, p);
      if (y == from) continue;
      out.push_back(p);
      if (dfs(y, x)) return true;
      out.pop_back();
    }
    return false;
  };
  dfs(u, -1);
  return out;
}

// endpoint of a simple walk, nullopt on a bad port or a revisit
inline std::optional<NodeId> walk(const PortLabeledTree& t, NodeId s, const PathCode& code) {
  std::vector<char> seen(t.size(), 0);
  seen[s] = 1;
  for (int p : code) {
    if (p < 0 || p >= t.degree(s)) return std::nullopt;
    s = t.neighbor(s, p);
    if (seen[s]) return std::nullopt;
    seen[s] = 1;
  }
  return s;
}

// election is possible with these per-node advice strings in time tau
inline bool election_possible(const PortLabeledTree& t, const std::vector<std::string>& adv, int tau) {
  int n = t.size();
  std::map<std::string, std::vector<NodeId>> classes;
  for (NodeId v = 0; v < n; ++v) classes[ball_key(t, adv, v, tau)].push_back(v);
  for (NodeId l = 0; l < n; ++l) {
    bool ok = true;
    for (auto& [key, members] : classes) {
      // one output per ball class; every member must reach l simply
      PathCode out = path(t, members.front(), l);
      for (NodeId v : members) {
        auto e = walk(t, v, out);
        if (!e || *e != l) { ok = false; break; }
      }
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

// smallest tau <= tau_max with some lambda-valent assignment, trying all lambda^n colorings
inline std::optional<int> xi(const PortLabeledTree& t, int lambda, int tau_max) {
  int n = t.size();
  for (int tau = 0; tau <= tau_max; ++tau) {
    std::vector<int> c(n, 0);
    while (true) {
      std::vector<std::string> adv(n);
      for (int i = 0; i < n; ++i) adv[i] = std::string(1, char('a' + c[i]));
      if (election_possible(t, adv, tau)) return tau;
      int i = 0;
      while (i < n && ++c[i] == lambda) c[i++] = 0;
      if (i == n) break;
    }
  }
  return std::nullopt;
}

// self-delimiting code by hand: base-lambda digits, prefix "1" per digit, a "0" comma in place of the prefix that
// opens every number after the first
inline std::string encode(const std::vector<unsigned long long>& seq, int lambda) {
  std::string out;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    auto x = seq[k];
    std::string digits;
    do {
      digits.insert(digits.begin(), char('0' + x % lambda));
      x /= lambda;
    } while (x);
    for (std::size_t i = 0; i < digits.size(); ++i) out += (i == 0 && k > 0 ? "0" : "1") + std::string(1, digits[i]);
  }
  return out;
}

inline std::vector<std::vector<int>> all_shapes_pruefer(int n) {
  // every Prüfer sequence; caller dedups by shape when needed
  std::vector<std::vector<int>> out;
  if (n < 2) return out;
  std::vector<int> seq(n - 2, 0);
  while (true) {
    out.push_back(seq);
    int i = 0;
    while (i < n - 2 && ++seq[i] == n) seq[i++] = 0;
    if (i == n - 2) break;
  }
  return out;
}

}  // namespace oracle
