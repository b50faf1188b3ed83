#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace leader {

using NodeId = std::int32_t;
using PathCode = std::vector<int>;
using AdviceString = std::string;  // digits '0'..'9'

struct Edge {
  NodeId u;
  int pu;
  NodeId v;
  int pv;
};

class TreeError : public std::runtime_error {
 public:
  enum class Kind { DuplicatePort, PortGap, NotATree, AsymmetricEdge, BadId, InvalidPort, NotSimple, Parse };
  TreeError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

class PortLabeledTree {
 public:
  PortLabeledTree() = default;

  int size() const { return static_cast<int>(nbr_.size()); }
  int degree(NodeId v) const { return static_cast<int>(nbr_[v].size()); }
  NodeId neighbor(NodeId v, int port) const { return nbr_[v][port]; }
  // port at neighbor(v, port) leading back to v
  int back_port(NodeId v, int port) const { return back_[v][port]; }
  std::vector<Edge> edges() const;

 private:
  friend PortLabeledTree build_tree(const std::vector<Edge>&, int);
  std::vector<std::vector<NodeId>> nbr_;
  std::vector<std::vector<int>> back_;
};

// n = 0 infers the count from the largest id
PortLabeledTree build_tree(const std::vector<Edge>& edges, int n = 0);

// swaps two ports at one node; result is rebuilt and validated
PortLabeledTree swap_ports(const PortLabeledTree& t, NodeId v, int a, int b);

struct CenterInfo {
  int diameter = 0;
  NodeId center_a = 0;   // central node, or one endpoint of the central edge
  NodeId center_b = -1;  // other endpoint when D is odd
  NodeId root = 0;
};

CenterInfo diameter_and_center(const PortLabeledTree& t);

// BFS structure rooted at some node; parent_port is the port at v toward its parent
struct Rooted {
  NodeId root = 0;
  std::vector<NodeId> parent;
  std::vector<int> parent_port;
  std::vector<int> port_at_parent;
  std::vector<int> depth;
  std::vector<NodeId> order;  // canonical BFS order, children by port
  int height = 0;
};

Rooted root_at(const PortLabeledTree& t, NodeId r);

PathCode path_ports(const PortLabeledTree& t, NodeId u, NodeId v);
// u up to the root of rt
PathCode path_to_root(const Rooted& rt, NodeId u);
NodeId follow_path(const PortLabeledTree& t, NodeId start, const PathCode& code);

struct AdviceAssignment {
  int lambda = 2;
  std::vector<AdviceString> per_node;

  int size() const;
  int valency() const;
};

// one ball node; nodes are stored in canonical BFS order (children by port at parent)
struct BallNode {
  std::int32_t parent;
  std::int32_t port_at_parent;  // port at parent leading here
  std::int32_t port_up;         // port here leading to parent (-1 at center)
  std::int32_t degree;
  std::int32_t depth;
  std::int32_t first_child;
  std::int32_t child_count;
  std::int32_t advice;  // index into the advice table
};

struct LabeledBall {
  int radius = 0;
  std::vector<BallNode> nodes;
  std::shared_ptr<const std::vector<AdviceString>> table;

  const AdviceString& advice(int i) const { return (*table)[nodes[i].advice]; }
  bool frontier(int i) const { return nodes[i].depth == radius; }
  // neighbor of ball node i through port p; -1 when beyond the ball
  int neighbor(int i, int p) const;
  // ports from the center to node i
  PathCode path_from_center(int i) const;
  // ports from node i to node j inside the ball
  PathCode path_between(int i, int j) const;
  int distance(int i, int j) const;
};

class BallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// raised by electors when the advice seen does not fit the scheme
class SchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// interned advice table shared by all balls extracted from one assignment
struct AdviceIndex {
  std::shared_ptr<const std::vector<AdviceString>> table;
  std::vector<std::int32_t> id;
  explicit AdviceIndex(const AdviceAssignment& a);
};

LabeledBall extract_ball(const PortLabeledTree& t, const AdviceIndex& adv, NodeId v, int tau);
LabeledBall extract_ball(const PortLabeledTree& t, const AdviceAssignment& adv, NodeId v, int tau);

bool balls_equal(const LabeledBall& a, const LabeledBall& b);
// preorder (advice, degree, child count) then per child (port_at_parent, port_at_child)
std::string serialize_ball(const LabeledBall& b);

// text formats
PortLabeledTree read_tree(std::istream& in);
void write_tree(std::ostream& out, const PortLabeledTree& t);
AdviceAssignment read_advice(std::istream& in);
void write_advice(std::ostream& out, const AdviceAssignment& a);

}  // namespace leader
