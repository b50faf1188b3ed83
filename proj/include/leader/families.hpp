#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leader/tree.hpp"

namespace leader {

class FamilyError : public std::runtime_error {
 public:
  enum class Kind { BadParams, RegimeMismatch, BadMember };
  FamilyError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

// one node whose port toward the center may be exchanged with one of its leaf ports
struct SwapSite {
  NodeId node;
  int base_port;
  std::vector<int> choices;  // base_port first, then the exchangeable leaf ports
};

struct FamilySide {
  std::vector<SwapSite> sites;
  std::vector<NodeId> observers;
  double log2_members() const;
};

enum class NodeRole : std::uint8_t { Root, Path, White, Grey, Black, Dotted, Extra };

struct NodeInfo {
  NodeRole role = NodeRole::Path;
  int i = 0, j = 0;   // subtree and path index (1-based) for general families
  int k = 0;          // position on the path; for leaves, position of the anchor
  int slot = 0;       // index among grey or dotted leaves of the anchor (1-based)
};

struct TreeFamily {
  PortLabeledTree base;
  int D = 0;
  NodeId root = 0;
  std::vector<FamilySide> sides;  // X first
  std::vector<NodeInfo> info;     // general families only

  // values[s] must be one of sides[side].sites[s].choices
  PortLabeledTree member(int side, const std::vector<int>& values) const;
};

struct LineFamilyParams {
  int n_prime = 0;
  int D = 0;
  int tau = 0;
  int z() const;
};

TreeFamily build_line_family(const LineFamilyParams& p);

enum class Regime { Small, Medium, Large };
const char* regime_name(Regime r);

struct GeneralFamilyParams {
  Regime regime = Regime::Large;
  int D = 0;
  int tau = 0;
  int k1 = 1;
  int k2 = 2;
  int z = 2;
  int zp = 0;  // dotted leaves per dotted node
  int y() const;
  int grey_count() const;
};

// paper defaults for each regime (eps for Small, b for Medium); desk-scale callers override fields
GeneralFamilyParams paper_general_params(Regime r, int n_prime, int D, double alpha, double eps_or_b = 0.2);

TreeFamily build_general_family(const GeneralFamilyParams& p);

// coloring certifying that the family's trees admit election in time tau with lambda colors
std::vector<int> witness_coloring(const TreeFamily& fam, const GeneralFamilyParams& p, int lambda);

struct PigeonholeWitness {
  std::vector<int> first, second;   // member descriptors on side 0
  NodeId observer = -1;             // an observer whose root path differs between the two
  PathCode path_first, path_second;
  long long members_examined = 0;
  long long largest_class = 0;      // members sharing one observer view
  double log2_labelings = 0;        // log2 of lambda^((p+1) * observer ball nodes)
  bool forced = false;              // largest_class exceeds the labelings
};

// Exhausted when no two examined members share all observer balls
std::optional<PigeonholeWitness> pigeonhole_check(const TreeFamily& fam, int p, int lambda, int tau,
                                                  long long member_cap);

std::string member_descriptor(const std::vector<int>& values);
std::vector<int> parse_member_descriptor(const std::string& s);

}  // namespace leader
