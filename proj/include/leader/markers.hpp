#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leader/tree.hpp"

namespace leader {

enum class Marker : std::uint8_t { None, White, Green, Blue, Red, Black };

const char* marker_name(Marker m);

class MarkerError : public std::runtime_error {
 public:
  enum class Kind { OverlapViolation, CapacityExceeded };
  MarkerError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

struct MarkerParams {
  int k = 4;
  int tau = 0;
  int lambda = 2;

  int stride() const { return tau / k; }             // floor(tau/k)
  int span() const { return (k - 2) * stride(); }    // full path length
  int window() const { return 2 * k + 9; }
  int piece() const { return stride() - window(); }  // payload slots per stride
  int capacity() const { return (k - 2) * piece(); }
};

using MarkerMap = std::vector<Marker>;

// oracle-side result of the marking pass plus the region bookkeeping later stages need
struct MarkerLayout {
  Rooted rt;
  MarkerMap marker;
  std::vector<NodeId> top;          // top of the region holding the node, -1 outside
  std::vector<int> offset;          // distance below that top
  std::vector<char> first_kind;     // lies on a full-length path of its region
  std::vector<int> sk_reach;        // deepest second-kind end offset at or below, -1 if none
  std::vector<int> black_above;     // offset of the nearest black at or above within the region, -1 if none
  std::vector<int> first_black;     // stride index of the first black on the path from the top, -1 if none
  std::vector<int> subtree_depth;   // deepest depth in the subtree
};

MarkerLayout marking(const PortLabeledTree& t, const MarkerParams& p);

// the (2k+9)-symbol pattern of a marker read from its root-ward end
std::string marker_pattern(Marker m, int k);

struct WindowMatch {
  Marker type = Marker::None;
  bool root_first = true;  // the first symbol of the window is the root-ward end
};
std::optional<WindowMatch> detect_marker(const std::string& window, int k);

// per-node marker symbol ('0'/'1') or '\0' for nodes outside every window
std::string assign_marker_bits(const PortLabeledTree& t, const MarkerLayout& lay, const MarkerParams& p);

struct PayloadReport {
  int tops = 0;
  int capacity = 0;
  int max_separated = 0;       // longest separated root-path code over all tops, terminator excluded
  int capacity_violations = 0; // tops whose separated code exceeds the capacity
};

AdviceAssignment coding_payload(const PortLabeledTree& t, const MarkerLayout& lay, const std::string& marker_bits,
                                const MarkerParams& p, PayloadReport* report = nullptr);

// full pipeline: marking, marker bits, payload
AdviceAssignment marker_advice(const PortLabeledTree& t, const MarkerParams& p, PayloadReport* report = nullptr);

// which decoding branch produced the answer; exposed for tests and statistics
enum class DecodeCase { White, FullPath, Splice };
PathCode decode_payload(const LabeledBall& ball, const MarkerParams& p, DecodeCase* used = nullptr);

}  // namespace leader
