#include "leader/bounded.hpp"

#include <cmath>

#include "leader/betas.hpp"
#include "leader/codec.hpp"
#include "leader/colored_map.hpp"

namespace leader {

int pipeline_tau_threshold(int k) { return k * (k - 2) * (2 * k + 10) + k + 1; }

SchemeParams make_params(int n, int D, int tau, int lambda, double c, int k_override) {
  SchemeParams sp;
  sp.lambda = lambda;
  sp.tau = tau;
  sp.c = c;
  sp.eps = (1 - c) / 200;
  if (c > 0 && c < 1) sp.tau_prime = static_cast<int>(std::floor(solve_betas(c, lambda).beta2 * D));
  sp.gamma = sp.tau_prime > 0 ? static_cast<double>(tau) / sp.tau_prime : HUGE_VAL;
  if (k_override > 0) {
    sp.k = k_override;
    sp.k_found = true;
  } else {
    for (int k = 4; k <= 4096; ++k)
      if (sp.gamma * (k - 3) >= k + 1) {
        sp.k = k;
        sp.k_found = true;
        break;
      }
  }
  sp.pipeline = sp.k_found && tau >= pipeline_tau_threshold(sp.k) && n >= 200 / (1 - c);
  return sp;
}

AdviceAssignment bounded_valency_advice(const PortLabeledTree& t, int tau, int lambda, double c, BoundedReport* report,
                                        const BoundedOptions& opt) {
  auto ci = diameter_and_center(t);
  int n = t.size(), D = ci.diameter;
  if (c <= 0) c = n > 0 ? std::min(0.999, std::max(0.001, static_cast<double>(D) / n)) : 0.5;
  BoundedReport rep;
  rep.params = make_params(n, D, tau, lambda, c, opt.k_override);
  if (rep.params.pipeline) {
    rep.used_pipeline = true;
    auto rt = root_at(t, ci.root);
    int bound = (D + 1) / 2 - rep.params.tau_prime;
    for (NodeId v = 0; v < n; ++v) {
      if (rt.depth[v] > bound) continue;
      int len = static_cast<int>(encode_ports(path_to_root(rt, v), lambda).size());
      ++rep.depth_checked;
      rep.max_short_code = std::max(rep.max_short_code, len);
      if (len > rep.params.tau_prime + 1) ++rep.depth_violations;
    }
    auto a = marker_advice(t, rep.params.marker(), &rep.payload);
    if (report) *report = rep;
    return a;
  }
  if (n > opt.fallback_cap)
    throw BoundedError(BoundedError::Kind::FallbackTooLarge,
                       "exhaustive coloring search capped at n=" + std::to_string(opt.fallback_cap));
  // prefer the center as leader so every regime elects the same node
  auto cert = find_certificate(t, lambda, tau, ci.root);
  if (!cert) cert = find_certificate(t, lambda, tau);
  if (!cert)
    throw BoundedError(BoundedError::Kind::NoDistinguishingColoring,
                       "no coloring with " + std::to_string(lambda) + " colors works at tau=" + std::to_string(tau));
  rep.leader = cert->leader;
  if (report) *report = rep;
  return colored_map_advice(t, cert->colors, tau, lambda, cert->leader);
}

PathCode bounded_valency_election(const LabeledBall& ball, const SchemeParams& params) {
  if (ball.advice(0).size() > 1) return elect_colored_map(ball);
  return decode_payload(ball, params.marker());
}

}  // namespace leader
