#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leader/tree.hpp"

namespace leader {

class IdentificationFailure : public SchemeError {
 public:
  using SchemeError::SchemeError;
};

struct ColoredMap {
  PortLabeledTree tree;
  std::vector<int> color;
  NodeId root = 0;
};

// the map is always written over {0,1} so it can be read without knowing lambda
std::string serialize_map(const ColoredMap& m);
ColoredMap parse_map(const std::string& s);

// advice is the node's own color digit followed by the shared map; leader < 0 picks the center root
AdviceAssignment colored_map_advice(const PortLabeledTree& t, const std::vector<int>& colors, int tau, int lambda,
                                    NodeId leader = -1);
PathCode elect_colored_map(const LabeledBall& ball);

// returns nullopt when at least two nodes with equal balls need different root paths;
// otherwise the per-node path to the leader
std::optional<std::vector<PathCode>> identification_paths(const PortLabeledTree& t, const std::vector<int>& colors,
                                                          int tau, NodeId leader);

struct XiCertificate {
  int tau = 0;
  std::vector<int> colors;
  NodeId leader = 0;
  std::vector<PathCode> outputs;
};

// smallest tau <= tau_max admitting lambda-valent advice; colorings are restricted growth strings
// in lexicographic order, leaders by id
std::optional<XiCertificate> election_index(const PortLabeledTree& t, int lambda, int tau_max);
// same search at a single tau; only_leader >= 0 restricts the leader
std::optional<XiCertificate> find_certificate(const PortLabeledTree& t, int lambda, int tau, NodeId only_leader = -1);

}  // namespace leader
