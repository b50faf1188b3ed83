#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "leader/bounded.hpp"
#include "leader/tree.hpp"

namespace leader {

enum class Scheme { Unbounded, Bounded, ColoredMap };
const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& s);  // throws std::invalid_argument

using Elector = std::function<PathCode(const LabeledBall&)>;

// bounded needs the scheme parameters the advice was built with
Elector make_elector(Scheme s, int tau, const SchemeParams* params = nullptr);

// LEADER_THREADS, else hardware concurrency, at least 1
int thread_count();
// runs f(0..n-1); exceptions from f are rethrown after all workers stop
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

struct VerifyFlags {
  bool all_simple = false;
  bool common_endpoint = false;
  std::optional<NodeId> endpoint;
  std::vector<NodeId> bad_nodes;  // invalid walk or missing output
};

// missing[v] marks nodes whose elector failed
VerifyFlags verify_outputs(const PortLabeledTree& t, const std::vector<PathCode>& outputs,
                           const std::vector<char>& missing = {});

struct AdviceMeasure {
  int size = 0;
  int valency = 0;
};
AdviceMeasure measure_advice(const AdviceAssignment& a);

struct ElectionOutcome {
  std::vector<PathCode> outputs;
  std::vector<std::string> errors;  // empty string when the node produced an output
  std::optional<NodeId> elected;
  bool all_simple = false;
  bool common_endpoint = false;
  bool equals_root = false;
  int advice_size = 0;
  int valency = 0;
  double wall_seconds = 0;

  bool ok() const { return all_simple && common_endpoint && equals_root; }
  int error_count() const;
};

// expected_root < 0 compares against the tree's center root
ElectionOutcome run_election(const PortLabeledTree& t, const AdviceAssignment& a, const Elector& elector, int tau,
                             NodeId expected_root = -1);

// deterministic text report: flags, then one line per node
std::string outcome_report(const ElectionOutcome& o);

using Rng = std::mt19937_64;

PortLabeledTree shuffle_ports(const PortLabeledTree& t, Rng& rng);
// uniform labeled tree from a Prüfer sequence, ports shuffled
PortLabeledTree random_tree(int n, Rng& rng);
// spine of length D plus random attachments that keep the diameter at D, ports shuffled;
// max_branch > 1 hangs chains of up to that many nodes per attachment
PortLabeledTree random_tree_with_diameter(int n, int D, Rng& rng, int max_branch = 1);

// size-bound normalizer for the unbounded scheme
double unbounded_bound(int n, int D, int tau);

struct ExperimentRecord {
  std::string scheme;
  int n = 0, D = 0, tau = 0, lambda = 2;
  int size = 0, valency = 0;
  bool pass = false;
  double bound = 0;
  std::string error;
};

struct ExperimentDescriptor {
  std::string generator = "random";  // random | diameter
  std::string scheme = "unbounded";  // unbounded | bounded
  std::vector<int> n;
  std::vector<std::string> D;        // integers or "n/K"; ignored by the random generator
  std::vector<std::string> tau;      // integers, "D/K", or "all"
  int trees = 1;
  std::uint64_t seed = 1;
  int lambda = 2;
  double c = 0;
  int k = 0;
};

ExperimentDescriptor parse_descriptor(const std::string& json_text);
std::vector<ExperimentRecord> sweep(const ExperimentDescriptor& d);
std::string records_csv(const std::vector<ExperimentRecord>& rs);

}  // namespace leader
