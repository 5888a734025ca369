#pragma once

#include <vector>

namespace zsk {

// maximize c.x subject to A x <= b, x >= 0 (dense two-phase simplex).
struct LpResult {
  enum Status { Optimal, Infeasible, Unbounded } status = Optimal;
  double value = 0;
  std::vector<double> x;     // primal optimum
  std::vector<double> dual;  // one multiplier per row of A
};

LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c, double eps = 1e-11);

}  // namespace zsk
