#pragma once

#include <vector>

#include "pspin/errors.hpp"
#include "pspin/mixture.hpp"
#include "pspin/phase.hpp"

namespace pspin {

// Independent minimizer of the Crisanti-Sommers energy in its tail form
//   Q = (1/2) int_0^1 (xi''(x) phi(x) + 1/phi(x)) dx
// over positive, nonincreasing, concave phi (phi(x) = nu((x,1])). Used as
// ground truth to cross-validate the constructive solver.
struct OracleOptions {
  int N = 2000;           // grid intervals on [0,1]
  int max_iter = 30000;
  double tol = 1e-6;      // KKT (projected-gradient) residual target
  double floor = 1e-8;    // positivity floor on phi
};

struct OracleSolution {
  std::vector<double> grid;  // N+1 nodes 0 = x_0 < ... < x_N = 1
  std::vector<double> phi;   // tail samples at the nodes
  double energy = 0.0;
  double delta = 0.0;        // phi at 1
  int iterations = 0;
  double kkt_residual = 0.0;
  bool converged = false;
};

OracleSolution minimize_cs(const Mixture& mix, const OracleOptions& opts = {});

// Heuristic phase readout from an oracle solution: maximal runs where phi
// tracks xi''^{-1/2} in value and its slope gamma tracks the smooth density
// omega are segments (each test alone misfires near crossings/tangencies);
// elsewhere the piecewise-constant levels of gamma are counted as blocks.
// Never authoritative: the classifier uses it only as a cross-check.
struct ExtractOptions {
  double tol_seg = 1e-2;   // relative |gamma/omega - 1| threshold for segment cells
  double tol_val = 5e-4;   // absolute |phi - xi''^{-1/2}| threshold for segment cells
  double tol_jump = 1e-3;  // gamma increase that counts as a block boundary
  int min_run = 8;         // minimum grid cells per detected structure
};

struct ExtractedPhase {
  PhaseLabel label;
  std::vector<double> breakpoints;  // interior block boundaries
  std::vector<std::pair<double, double>> segments;
};

Result<ExtractedPhase> extract_phase(const Mixture& mix, const OracleSolution& sol,
                                     const ExtractOptions& opts = {});

}  // namespace pspin
