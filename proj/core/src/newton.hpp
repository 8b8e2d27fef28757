#pragma once

#include <functional>
#include <vector>

namespace pspin::detail {

using ResidualFn = std::function<std::vector<double>(const std::vector<double>&)>;

struct NewtonOptions {
  double tol = 1e-12;      // sup-norm convergence on residual
  int max_iter = 200;
  double fd_step = 1e-7;   // central-difference Jacobian step
  int max_halvings = 40;
};

double sup_norm(const std::vector<double>& v);

// Damped Newton with numeric Jacobian; returns true when the residual
// sup-norm drops below tol. x is updated in place.
bool newton(const ResidualFn& f, std::vector<double>& x, const NewtonOptions& opts = {});

// In-place Gaussian elimination solve of A x = b (small dense systems);
// returns false when the matrix is numerically singular.
bool solve_linear(std::vector<std::vector<double>>& a, std::vector<double>& b);

// All distinct Newton roots of a square residual system on (0,1)^dims whose
// solutions have strictly increasing coordinates. The residual must return
// penalty values (sup-norm >= 9) outside its domain. dims == 1 uses exhaustive
// sign-change bracketing over the candidate list; dims >= 2 seeds Newton from
// increasing candidate tuples, keeping the lowest-residual tuples per stratum
// of the first coordinate. Roots are deduped at 1e-7 and sorted
// lexicographically, so the output is deterministic.
std::vector<std::vector<double>> multistart_increasing_roots(const ResidualFn& residual, int dims,
                                                             const std::vector<double>& candidates,
                                                             const NewtonOptions& opts);

}  // namespace pspin::detail
