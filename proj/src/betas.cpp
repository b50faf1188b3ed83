#include "leader/betas.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace leader {

double beta_epsilon(double c) { return (1.0 - c) / 200.0; }

namespace {

using real = long double;

// long double keeps the residual small next to the log pole at beta = 1/2
real rhs1(real b, real c, int lambda) {
  real e = (1 - c) / 200;
  return (1 - 2 * b) / 2 * std::log((real(0.5) - b * c) / (c / 2 - b * c + e)) / std::log(real(lambda));
}

real rhs2(real b, real c, int lambda) {
  real e = (1 - c) / 200;
  return 2 * (real(0.5) - b + 2 * e) * (std::log((1 - c / 2 + e) / (c / 2 - b * c)) / std::log(real(lambda)) + 1);
}

struct Root {
  real x;
  bool falling;  // f goes from + to -
};

std::vector<Root> roots(const std::function<real(real)>& f) {
  const int N = 4000;
  const real lo = 1e-12L, hi = 0.5L - 1e-15L;
  std::vector<Root> out;
  real x0 = lo, f0 = f(lo);
  for (int i = 1; i <= N; ++i) {
    real x1 = i == N ? hi : lo + (hi - lo) * i / N, f1 = f(x1);
    if (f0 == 0) {
      out.push_back({x0, f1 < 0});
    } else if ((f0 < 0) != (f1 < 0) && f1 != 0) {
      real a = x0, b = x1, fa = f0, fb = f1;
      for (int it = 0; it < 200; ++it) {
        real m = (a + b) / 2;
        if (m == a || m == b) break;
        real fm = f(m);
        if ((fm < 0) == (fa < 0))
          a = m, fa = fm;
        else
          b = m, fb = fm;
      }
      out.push_back({std::fabs(fa) < std::fabs(fb) ? a : b, f0 > 0});
    }
    x0 = x1, f0 = f1;
  }
  return out;
}

}  // namespace

double beta1_rhs(double b, double c, int lambda) { return static_cast<double>(rhs1(b, c, lambda)); }
double beta2_rhs(double b, double c, int lambda) { return static_cast<double>(rhs2(b, c, lambda)); }

BetaPair solve_betas(double c, int lambda) {
  if (!(c > 0 && c < 1)) throw std::invalid_argument("c must lie in (0,1)");
  if (lambda < 2) throw std::invalid_argument("lambda must be at least 2");
  BetaPair bp;
  auto f1 = [&](real b) { return rhs1(b, c, lambda) - b; };
  auto f2 = [&](real b) { return rhs2(b, c, lambda) - b; };
  auto r1 = roots(f1), r2 = roots(f2);
  if (r1.empty()) throw NoRoot("no fixed point for beta1 at c=" + std::to_string(c));
  if (r2.empty()) throw NoRoot("no fixed point for beta2 at c=" + std::to_string(c));
  bp.beta1 = static_cast<double>(r1.front().x);
  // rhs2 blows up at 1/2, so f2 always climbs back through zero just below it; that rising root is skipped
  const Root* pick = &r2.back();
  for (auto it = r2.rbegin(); it != r2.rend(); ++it)
    if (it->falling) {
      pick = &*it;
      break;
    }
  bp.beta2 = static_cast<double>(pick->x);
  bp.residual1 = static_cast<double>(std::fabs(f1(r1.front().x)));
  bp.residual2 = static_cast<double>(std::fabs(f2(pick->x)));
  bp.roots1 = static_cast<int>(r1.size());
  bp.roots2 = static_cast<int>(r2.size());
  return bp;
}

std::vector<BetaRow> beta_grid(int lambda, int points) {
  std::vector<BetaRow> rows;
  for (int i = 1; i <= points; ++i) {
    double c = static_cast<double>(i) / (points + 1);
    rows.push_back({c, lambda, solve_betas(c, lambda)});
  }
  return rows;
}

}  // namespace leader
