#pragma once

#include "leader/markers.hpp"
#include "leader/tree.hpp"

namespace leader {

class BoundedError : public SchemeError {
 public:
  enum class Kind { NoDistinguishingColoring, FallbackTooLarge };
  BoundedError(Kind k, const std::string& msg) : SchemeError(msg), kind(k) {}
  Kind kind;
};

struct SchemeParams {
  int lambda = 2;
  int tau = 0;
  int k = 4;
  int tau_prime = 0;  // floor(beta2 * D)
  double gamma = 0;   // tau / tau_prime
  double c = 0.5;
  double eps = 0;
  bool k_found = false;
  bool pipeline = false;

  MarkerParams marker() const { return {k, tau, lambda}; }
};

// smallest tau admitted by the marker pipeline for a given k
int pipeline_tau_threshold(int k);

// k_override > 0 skips the gamma condition
SchemeParams make_params(int n, int D, int tau, int lambda, double c, int k_override = 0);

struct BoundedReport {
  SchemeParams params;
  bool used_pipeline = false;
  PayloadReport payload;
  int depth_checked = 0;       // nodes within the depth bound of the short-code lemma
  int depth_violations = 0;    // of those, codes longer than tau'+1
  int max_short_code = 0;
  NodeId leader = -1;          // fallback leader
};

struct BoundedOptions {
  int k_override = 0;
  int fallback_cap = 12;
};

// c <= 0 means use D/n
AdviceAssignment bounded_valency_advice(const PortLabeledTree& t, int tau, int lambda, double c,
                                        BoundedReport* report = nullptr, const BoundedOptions& opt = {});

PathCode bounded_valency_election(const LabeledBall& ball, const SchemeParams& params);

}  // namespace leader
