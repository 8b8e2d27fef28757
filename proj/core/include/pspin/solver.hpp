#pragma once

#include <vector>

#include "pspin/errors.hpp"
#include "pspin/kernels.hpp"
#include "pspin/measure.hpp"

namespace pspin {

struct SolverOptions {
  int grid = 200;             // coarse-grid points per unknown for multistart
  double newton_tol = 1e-12;  // residual sup-norm target
  double min_gap = 1e-7;      // degeneracy guard between consecutive q's
  double cond_tol = 1e-9;     // relative slack on conditions (2)/(3)
  int curvature_grid = 1000;  // per-segment samples for the curvature condition
};

// k-step replica-symmetry-breaking ansatz: the k unknowns
// (q_1, ..., q_{k-1}, z_k) solve the k boundary equations; delta, z_l and m_l
// are recovered in closed form from the tail recursion.
struct RsbSolution {
  int k = 0;
  std::vector<double> q;  // q_0 = 0 < q_1 < ... < q_k = 1
  double zk = 0.0;
  std::vector<double> z;  // z_1 .. z_k
  double delta = 0.0;
  std::vector<double> m;  // m_1 .. m_k, strictly increasing
  std::vector<double> residuals;
  bool cond2_ok = false;
  bool cond3_ok = false;  // reported true when the check is skipped (k == n)
  ParisiMeasure measure;
};

Result<RsbSolution> solve_rsb(const Mixture& mix, int k, const SolverOptions& opts = {});

// One block of a full-RSB structure, in global coordinates.
struct FrsbBlock {
  Chain chain;
  double star = 0.0;
  double F_first = 0.0;
  double F_last = 0.0;
};

// k-FRSB structure for a composition (s_1, ..., s_t): t blocks of sizes s_j
// joined by smooth segments where the tail equals xi''^{-1/2}. A trailing
// part of 0 denotes the degenerate last set {1}, i.e. a final segment
// reaching 1 with no block after it.
struct FrsbSolution {
  std::vector<int> composition;
  std::vector<FrsbBlock> blocks;
  std::vector<double> residuals;
  bool cond2_ok = false;
  bool cond3_ok = false;  // true when skipped (k == n)
  bool cond4_ok = false;  // true when skipped (k == n)
  ParisiMeasure measure;
};

Result<FrsbSolution> solve_frsb(const Mixture& mix, const std::vector<int>& composition,
                                const SolverOptions& opts = {});

// All x in (q[l-1], q[l]) with (A_l of the chain q augmented by x at slot l)
// raised to `parity` equal to `level`, located by a 2048-point sign scan plus
// bisection. At most two roots are expected; more signals a numeric anomaly.
std::vector<double> critical_points(const Mixture& mix, const std::vector<double>& q, int l,
                                    double level, int parity);

// Boundary-equation residual at (q, 1+z_k) for interval l (1..k), either in
// the F_l form or the dual F_{l-1} form; the two agree identically at any
// chain, which the tests exercise as an internal consistency check.
double rsb_residual(const Mixture& mix, const std::vector<double>& q, double one_plus_zk, int l,
                    bool dual_form = false);

}  // namespace pspin
