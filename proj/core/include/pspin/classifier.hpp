#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pspin/hset.hpp"
#include "pspin/measure.hpp"
#include "pspin/oracle.hpp"
#include "pspin/phase.hpp"
#include "pspin/solver.hpp"

namespace pspin {

struct ClassifyOptions {
  bool oracle_check = true;     // cross-validate the energy against the oracle
  int oracle_N = 2000;
  double oracle_gap_tol = 1e-4;  // relative energy gap threshold
  double boundary_window = 1e-4;  // structural gap below which near_boundary is set
  SolverOptions solver;
  HsetOptions hset;
  VerifyOptions verify;
  OracleOptions oracle;
};

struct ClassificationResult {
  PhaseLabel label;
  ParisiMeasure measure;
  double energy = 0.0;
  VerificationReport verification;
  bool criterion_agrees = false;  // H-criterion route reached the same verdict
  double oracle_gap = 0.0;        // |energy - oracle energy| (absolute); 0 if skipped
  bool oracle_ok = true;
  bool near_boundary = false;
};

// Outcome of classify: either a result, or one of the two failure modes the
// CLI maps to distinct exit codes.
struct ClassifyOutcome {
  enum class Error { None, NoPhaseFound, AmbiguousPhase };
  std::optional<ClassificationResult> result;
  Error error = Error::None;
  std::string detail;

  bool ok() const { return result.has_value(); }
};

// Search order: RS, then k-RSB for k = 1..n, then k-FRSB compositions in
// ascending k and lexicographic order (trailing-zero compositions denote a
// final segment reaching 1). A phase is accepted when the H-criterion route
// holds, the constructive solver succeeds, and the optimality verification
// passes; the first such phase wins (the minimizer is unique). If only a
// constructive-route candidate verifies, it is returned with
// criterion_agrees = false.
ClassifyOutcome classify(const Mixture& mix, const ClassifyOptions& opts = {});

// All FRSB compositions for a given total k (t >= 2 parts, optionally ending
// in a single 0), in the classifier's deterministic order.
std::vector<std::vector<int>> frsb_compositions(int k);

struct ScanRow {
  std::vector<double> weights;
  bool ok = false;
  PhaseLabel label;
  double energy = 0.0;
  double oracle_gap = 0.0;
  std::string flags;  // semicolon-joined diagnostics; error text when !ok
};

struct ScanAxis {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;  // step <= 0 means fixed at lo
};

// Classify on a grid over the weight axes (the last weight may be derived by
// passing one fewer axis than exponents). Rows are emitted in deterministic
// grid order; per-row failures are recorded in the row, not thrown.
std::vector<ScanRow> phase_scan(const std::vector<int>& exponents,
                                const std::vector<ScanAxis>& axes,
                                const ClassifyOptions& opts = {});

// Phase boundaries of the two-component family xi = lambda x^p + (1-lambda) x^s
// along lambda: the closed 2x2 systems for 1-RSB/2-RSB and 2-RSB/2-FRSB, and
// classification bisection for 2-FRSB/1-FRSB and 1-FRSB/1-RSB.
struct BoundaryTable {
  double x_1to2 = 0.0, lambda_1to2 = 0.0;
  double x_2to2f = 0.0, lambda_2to2f = 0.0;
  double lambda_2fto1f = 0.0;
  double lambda_1fto1 = 0.0;
  bool found_1to2 = false, found_2to2f = false, found_2fto1f = false, found_1fto1 = false;
};

BoundaryTable two_component_boundaries(int p, int s, const ClassifyOptions& opts = {});

}  // namespace pspin
