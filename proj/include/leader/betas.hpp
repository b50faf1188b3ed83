#pragma once

#include <stdexcept>
#include <vector>

namespace leader {

class NoRoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BetaPair {
  double beta1 = 0;
  double beta2 = 0;
  int roots1 = 0;  // fixed points found in (0, 1/2)
  int roots2 = 0;
  double residual1 = 0;
  double residual2 = 0;
  double gap() const { return beta2 - beta1; }
};

double beta_epsilon(double c);
// right-hand sides of the two fixed-point equations
double beta1_rhs(double beta, double c, int lambda);
double beta2_rhs(double beta, double c, int lambda);

// smallest fixed point for beta1; for beta2 the largest one where rhs - beta turns negative
BetaPair solve_betas(double c, int lambda);

struct BetaRow {
  double c;
  int lambda;
  BetaPair pair;
};
// c = 1/(points+1) ... points/(points+1)
std::vector<BetaRow> beta_grid(int lambda, int points = 99);

}  // namespace leader
