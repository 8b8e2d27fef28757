// Acceptance suite: one pass/fail line per criterion. Run with a criterion
// number (1-9) or with no argument to run all of them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pspin/classifier.hpp"
#include "pspin/hset.hpp"
#include "pspin/measure.hpp"
#include "pspin/oracle.hpp"
#include "pspin/solver.hpp"

using namespace pspin;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      ok = false;
      why << what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Mixture family(double l1, double l2) { return Mixture::make({4, 28, 84}, {l1, l2}, true); }

ClassifyOptions no_oracle_opts() {
  ClassifyOptions opts;
  opts.oracle_check = false;
  return opts;
}

// Criterion 1: the lambda2 = 0.1118 mixture is 3-RSB; the published chain
// satisfies the six-sign membership condition strictly; the two chain maxima
// are attained by the third-level functionals, one per family.
Check criterion1() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const Mixture m = family(0.88, 0.1118);
  const ClassifyOutcome out = classify(m, no_oracle_opts());
  c.expect(out.ok(), "classification failed: " + out.detail);
  if (out.ok()) {
    c.expect(out.result->label.kind == PhaseKind::RSB && out.result->label.k == 3,
             "expected 3-RSB");
    c.expect(out.result->criterion_agrees, "criterion route disagrees");
  }
  const KappaReport rep = condition_kappa(m, Chain{0.0, 0.9345, 0.975, 1.0});
  c.expect(rep.satisfied && rep.strict, "chain condition not strictly satisfied");
  for (int l = 0; l < 3; ++l) {
    c.expect(rep.margin_z[static_cast<std::size_t>(l)] > 1e-10, "z-margin not strict");
    c.expect(rep.margin_y[static_cast<std::size_t>(l)] > 1e-10, "y-margin not strict");
  }
  c.expect(rep.profile.z_arg == 2 && rep.profile.y_arg == 2 &&
               rep.profile.z_from_A != rep.profile.y_from_A,
           "chain maxima not attained by the third-level F/A pair");
  const double dt = seconds_since(t0);
  c.expect(dt < 5.0, "runtime " + std::to_string(dt) + "s exceeds 5s");
  return c;
}

// Criterion 2: lambda2 = 0.1253 is 3-FRSB with composition (1,2); solver
// brackets and the published corner sign table.
Check criterion2() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const Mixture m = family(0.86, 0.1253);
  const ClassifyOutcome out = classify(m, no_oracle_opts());
  c.expect(out.ok(), "classification failed: " + out.detail);
  if (out.ok()) {
    c.expect(out.result->label.kind == PhaseKind::FRSB &&
                 out.result->label.composition == std::vector<int>{1, 2} &&
                 out.result->label.f_set == std::vector<int>{1},
             "expected 3-FRSB (1,2) with F={1}");
    c.expect(out.result->criterion_agrees, "criterion route disagrees");
  }
  const Result<FrsbSolution> sol = solve_frsb(m, {1, 2});
  c.expect(sol.ok(), "constructive solve failed");
  if (sol.ok()) {
    const double q11 = sol->blocks[0].chain[1];
    c.expect(0.929 <= q11 && q11 <= 0.93, "q1^1 outside [0.929, 0.93]");
    const double q12 = sol->blocks[1].chain[0], q22 = sol->blocks[1].chain[1];
    c.expect(0.9352 <= q12 && q12 <= 0.936, "q1^2 outside [0.9352, 0.936]");
    c.expect(0.9497 <= q22 && q22 <= 0.94975, "q2^2 outside [0.9497, 0.94975]");
  }
  // Interval endpoints bracketing the first-set maximum.
  c.expect(hbar(m, HBar::h1L, 0.929, 0.0) <= 0.0, "h1L(0.929) > 0");
  c.expect(hbar(m, HBar::h1L, 0.93, 0.0) >= 0.0, "h1L(0.93) < 0");
  // Corner sign table on [0.9352, 0.936] x [0.9497, 0.94975].
  const double x0[2] = {0.9352, 0.936}, x1[2] = {0.9497, 0.94975};
  for (int i = 0; i < 2; ++i) {
    c.expect(hbar(m, HBar::h2L, x0[0], x1[i]) <= 0.0, "h2L at x0^1 > 0");
    c.expect(hbar(m, HBar::h2L, x0[1], x1[i]) >= 0.0, "h2L at x0^2 < 0");
    c.expect(hbar(m, HBar::h3L, x0[i], x1[0]) <= 0.0, "h3L at x1^1 > 0");
    c.expect(hbar(m, HBar::h3L, x0[i], x1[1]) >= 0.0, "h3L at x1^2 < 0");
    for (int j = 0; j < 2; ++j)
      c.expect(hbar(m, HBar::h2U, x0[i], x1[j]) <= 0.0, "h2U > 0 in the box");
  }
  // In the box the maxima come from F_1 and F_0.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const KernelProfile p = chain_profile(m, Chain{x0[i], x1[j], 1.0});
      c.expect(!p.z_from_A && p.z_arg == 1, "Z not attained by F_1 in the box");
      c.expect(!p.y_from_A && p.y_arg == 0, "Y not attained by F_0 in the box");
    }
  const double dt = seconds_since(t0);
  c.expect(dt < 10.0, "runtime " + std::to_string(dt) + "s exceeds 10s");
  return c;
}

// Criterion 3: lambda2 = 0.1113 is 3-FRSB with F = {2}; solver brackets and
// corner sign table.
Check criterion3() {
  Check c;
  const Mixture m = family(0.88, 0.1113);
  const ClassifyOutcome out = classify(m, no_oracle_opts());
  c.expect(out.ok(), "classification failed: " + out.detail);
  if (out.ok()) {
    c.expect(out.result->label.kind == PhaseKind::FRSB &&
                 out.result->label.composition == std::vector<int>{2, 1} &&
                 out.result->label.f_set == std::vector<int>{2},
             "expected 3-FRSB (2,1) with F={2}");
    c.expect(out.result->criterion_agrees, "criterion route disagrees");
  }
  const Result<FrsbSolution> sol = solve_frsb(m, {2, 1});
  c.expect(sol.ok(), "constructive solve failed");
  if (sol.ok()) {
    const double q21 = sol->blocks[0].chain[2];
    c.expect(0.97136 <= q21 && q21 <= 0.97139, "q2^1 outside [0.97136, 0.97139]");
    const double q22 = sol->blocks[1].chain[0];
    c.expect(0.9714 <= q22 && q22 <= 0.9715, "q2^2 outside [0.9714, 0.9715]");
  }
  // Last-set bracket.
  c.expect(hbar(m, HBar::h3U, 0.0, 0.9714) <= 0.0, "h3U(0.9714) > 0");
  c.expect(hbar(m, HBar::h3U, 0.0, 0.9715) >= 0.0, "h3U(0.9715) < 0");
  // Corner sign table on [0.934676, 0.9346764] x [0.97136, 0.97139].
  const double x1[2] = {0.934676, 0.9346764}, x2[2] = {0.97136, 0.97139};
  for (int i = 0; i < 2; ++i) {
    c.expect(hbar(m, HBar::h1L, x1[i], 0.0) <= 0.0, "h1L > 0 in the box");
    c.expect(hbar(m, HBar::h2U, x1[i], x2[0]) <= 0.0, "h2U at x2^1 > 0");
    c.expect(hbar(m, HBar::h2U, x1[i], x2[1]) >= 0.0, "h2U at x2^2 < 0");
    for (int j = 0; j < 2; ++j)
      c.expect(hbar(m, HBar::h2L, x1[i], x2[j]) >= -1e-12, "h2L < 0 in the box");
  }
  c.expect(hbar(m, HBar::h1U, x1[0], x2[0]) >= 0.0, "h1U at (x1^1, x2^1) < 0");
  c.expect(hbar(m, HBar::h1U, x1[0], x2[1]) <= 0.0, "h1U at (x1^1, x2^2) > 0");
  c.expect(hbar(m, HBar::h1U, x1[1], x2[0]) >= 0.0, "h1U at (x1^2, x2^1) < 0");
  c.expect(hbar(m, HBar::h1U, x1[1], x2[1]) >= 0.0, "h1U at (x1^2, x2^2) < 0");
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const KernelProfile p = chain_profile(m, Chain{0.0, x1[i], x2[j]});
      c.expect(!p.z_from_A && p.z_arg == 1, "Z not attained by F_1 in the box");
      c.expect(!p.y_from_A && p.y_arg == 2, "Y not attained by F_2 in the box");
    }
  return c;
}

// Criterion 4: lambda2 = 0.1108 is 3-FRSB with F = {1,2}; solver brackets.
Check criterion4() {
  Check c;
  const Mixture m = family(0.88, 0.1108);
  const ClassifyOutcome out = classify(m, no_oracle_opts());
  c.expect(out.ok(), "classification failed: " + out.detail);
  if (out.ok()) {
    c.expect(out.result->label.kind == PhaseKind::FRSB &&
                 out.result->label.composition == std::vector<int>{1, 1, 1} &&
                 out.result->label.f_set == std::vector<int>{1, 2},
             "expected 3-FRSB (1,1,1) with F={1,2}");
    c.expect(out.result->criterion_agrees, "criterion route disagrees");
  }
  const Result<FrsbSolution> sol = solve_frsb(m, {1, 1, 1});
  c.expect(sol.ok(), "constructive solve failed");
  if (sol.ok()) {
    const double q11 = sol->blocks[0].chain[1];
    c.expect(0.9345 <= q11 && q11 <= 0.935, "q1^1 outside [0.9345, 0.935]");
    const double q12 = sol->blocks[1].chain[0], q22 = sol->blocks[1].chain[1];
    c.expect(0.939 <= q12 && q12 <= 0.94, "q1^2 outside [0.939, 0.94]");
    c.expect(0.959 <= q22 && q22 <= 0.961, "q2^2 outside [0.959, 0.961]");
    const double q23 = sol->blocks[2].chain[0];
    c.expect(0.97 <= q23 && q23 <= 0.972, "q2^3 outside [0.97, 0.972]");
  }
  return c;
}

// Criterion 5: optimality verification closes over every solver path of the
// corpus at grid 4096.
Check criterion5() {
  Check c;
  std::vector<std::pair<std::string, ParisiMeasure>> measures;
  measures.emplace_back("pure 2-spin RS", rs_measure(Mixture::make_diagnostic({2}, {1.0})));
  const Result<RsbSolution> p3 = solve_rsb(Mixture::make({3}, {1.0}), 1);
  c.expect(p3.ok(), "pure 3-spin solve failed");
  if (p3.ok()) measures.emplace_back("pure 3-spin 1-RSB", p3->measure);
  const Result<RsbSolution> e2 = solve_rsb(family(0.88, 0.1118), 3);
  c.expect(e2.ok(), "3-RSB solve failed");
  if (e2.ok()) measures.emplace_back("3-RSB", e2->measure);
  const Result<FrsbSolution> e3 = solve_frsb(family(0.86, 0.1253), {1, 2});
  c.expect(e3.ok(), "(1,2) solve failed");
  if (e3.ok()) measures.emplace_back("FRSB (1,2)", e3->measure);
  const Result<FrsbSolution> e4 = solve_frsb(family(0.88, 0.1113), {2, 1});
  c.expect(e4.ok(), "(2,1) solve failed");
  if (e4.ok()) measures.emplace_back("FRSB (2,1)", e4->measure);
  const Result<FrsbSolution> e5 = solve_frsb(family(0.88, 0.1108), {1, 1, 1});
  c.expect(e5.ok(), "(1,1,1) solve failed");
  if (e5.ok()) measures.emplace_back("FRSB (1,1,1)", e5->measure);

  for (const auto& [name, nu] : measures) {
    VerifyOptions vopts;
    vopts.grid = 4096;
    const VerificationReport rep = verify_parisi(nu, vopts);
    c.expect(rep.grid_size == 4096, name + ": wrong grid");
    c.expect(std::abs(rep.cond_i_residual) <= 1e-8, name + ": condition (i) residual too large");
    c.expect(rep.min_g >= -1e-8, name + ": g dips below -1e-8");
    c.expect(rep.g_at_support <= 1e-8, name + ": |g| on support too large");
    c.expect(rep.passed, name + ": verification failed");
  }
  return c;
}

// Criterion 6: the independent convex oracle reproduces every corpus energy to
// 1e-4 relative, tracks the smooth profile on the (1,2) segment, and nails the
// pure 2-spin closed form.
Check criterion6() {
  Check c;
  struct Case {
    std::string name;
    Mixture mix;
    double energy;
  };
  std::vector<Case> cases;
  cases.push_back({"pure 2-spin", Mixture::make_diagnostic({2}, {1.0}), std::sqrt(2.0)});
  cases.push_back({"pure 3-spin", Mixture::make({3}, {1.0}), 1.65699836353});
  cases.push_back({"3-RSB", family(0.88, 0.1118), 2.02848510344});
  cases.push_back({"FRSB (1,2)", family(0.86, 0.1253), 2.0644526654});
  cases.push_back({"FRSB (2,1)", family(0.88, 0.1113), 2.029637395});
  cases.push_back({"FRSB (1,1,1)", family(0.88, 0.1108), 2.03077970635});
  for (const Case& k : cases) {
    const OracleSolution sol = minimize_cs(k.mix);
    c.expect(std::abs(sol.energy - k.energy) / k.energy <= 1e-4,
             k.name + ": oracle energy off by more than 1e-4 relative");
    if (k.name == "pure 2-spin")
      c.expect(std::abs(sol.energy - std::sqrt(2.0)) <= 1e-5,
               "pure 2-spin energy not sqrt(2) within 1e-5");
    if (k.name == "FRSB (1,2)") {
      // On the interior of the segment, phi must track xi''^{-1/2} to 5e-4.
      const Result<FrsbSolution> f = solve_frsb(k.mix, {1, 2});
      if (f.ok()) {
        const MeasureSegment seg = f->measure.segments[0];
        double worst = 0.0;
        for (std::size_t j = 0; j < sol.grid.size(); ++j) {
          const double x = sol.grid[j];
          if (x >= seg.a + 1e-3 && x <= seg.b - 1e-3)
            worst = std::max(worst, std::abs(sol.phi[j] - 1.0 / std::sqrt(k.mix.xi2(x))));
        }
        c.expect(worst <= 5e-4, "segment profile deviates by more than 5e-4");
      }
    }
  }
  return c;
}

// Criterion 7: kernel property suite.
Check criterion7() {
  Check c;
  const Mixture m = family(0.88, 0.1118);
  const Mixture p3 = Mixture::make({3}, {1.0});
  // Diagonal vanishing.
  for (double x : {0.0, 0.4, 0.9})
    c.expect(std::abs(h(m, x, x, 1.7)) < 1e-14, "h does not vanish on the diagonal");
  // Strict monotonicity in z.
  {
    double prev = -1e300;
    for (double z : {1e-3, 0.5, 0.9999, 1.0, 1.0001, 3.0, 1e3}) {
      const double v = h(m, 0.2, 0.8, z);
      c.expect(v > prev, "h not strictly increasing in z");
      prev = v;
    }
  }
  // Limits.
  const double x = 0.3, y = 0.9;
  const double base = m.xi(y) - m.xi(x) - m.xi1(x) * (y - x);
  const double slope = (m.xi1(y) - m.xi1(x)) * (y - x);
  c.expect(std::abs(h(m, x, y, ZLimit::Zero) - (base - slope)) < 1e-12, "z->0 limit wrong");
  c.expect(std::abs(h(m, x, y, ZLimit::One) - (base - 0.5 * slope)) < 1e-12, "z->1 limit wrong");
  c.expect(std::abs(h(m, x, y, ZLimit::Infinity) - base) < 1e-12, "z->inf limit wrong");
  c.expect(std::abs(h(m, x, y, 1e-13) - h(m, x, y, ZLimit::Zero)) < 1e-9, "z->0 approach wrong");
  c.expect(std::abs(h(m, x, y, 1e13) - h(m, x, y, ZLimit::Infinity)) < 1e-9,
           "z->inf approach wrong");
  // Series/direct agreement at the handoff: both branches match the local
  // expansion B(1+d) = -1/2 + d/6 + O(d^2).
  for (double d : {9.9e-5, 1.01e-4}) {
    c.expect(std::abs(h_bracket(1.0 - d) - (-0.5 - d / 6.0)) < 1e-8,
             "series handoff mismatch below 1");
    c.expect(std::abs(h_bracket(1.0 + d) - (-0.5 + d / 6.0)) < 1e-8,
             "series handoff mismatch above 1");
  }
  // r1 -> r2 limit.
  c.expect(std::abs(r1(m, 0.3, 0.8, 0.8 + 1e-9) - r2(m, 0.3, 0.8)) < 1e-5,
           "r1 does not approach r2");
  c.expect(std::abs(r2(p3, 0.0, 1.0) - 2.0) < 1e-14, "pure 3-spin r2(0,1) != 2");
  // Parity-duality identity at the 3-RSB solution.
  const Result<RsbSolution> sol = solve_rsb(m, 3);
  c.expect(sol.ok(), "3-RSB solve failed");
  if (sol.ok()) {
    for (int l = 2; l <= 3; ++l) {
      const double direct = rsb_residual(m, sol->q, 1.0 + sol->zk, l, false);
      const double dual = rsb_residual(m, sol->q, 1.0 + sol->zk, l, true);
      c.expect(std::abs(direct - dual) < 1e-12, "parity-dual residual mismatch");
    }
  }
  return c;
}

// Isolated support points: density jump locations plus the atom at 1.
int isolated_support_points(const ParisiMeasure& nu) {
  struct Piece {
    double a, b;
    bool block;
    double m;
  };
  std::vector<Piece> pieces;
  for (const MeasureBlock& b : nu.blocks) pieces.push_back({b.a, b.b, true, b.m});
  for (const MeasureSegment& s : nu.segments) pieces.push_back({s.a, s.b, false, 0.0});
  std::sort(pieces.begin(), pieces.end(), [](const Piece& p, const Piece& q) { return p.a < q.a; });
  auto gamma_at = [&](const Piece& p, double x) {
    return p.block ? p.m : omega_density(nu.mixture, x);
  };
  int count = 1;  // the atom at 1
  double left = 0.0;
  for (const Piece& p : pieces) {
    const double right = gamma_at(p, p.a);
    if (right - left > 1e-6 * std::max(1.0, right)) ++count;
    left = gamma_at(p, p.b);
  }
  return count;
}

// Criterion 8: randomized corpus; bounds of the structure theorem.
Check criterion8() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(20260825u);
  const ClassifyOptions opts = no_oracle_opts();
  int no_phase = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    std::set<int> ps;
    std::uniform_int_distribution<int> pdist(3, 90);
    while (static_cast<int>(ps.size()) < n) ps.insert(pdist(rng));
    const std::vector<int> exponents(ps.begin(), ps.end());
    std::vector<double> weights(static_cast<std::size_t>(n));
    std::exponential_distribution<double> edist(1.0);
    double sum = 0.0;
    for (double& w : weights) {
      w = edist(rng);
      sum += w;
    }
    for (double& w : weights) w /= sum;
    std::ostringstream tag;
    tag << "trial " << trial << " (";
    for (int p : exponents) tag << p << " ";
    tag << ")";
    try {
      const Mixture mix = Mixture::make(exponents, weights);
      const ClassifyOutcome out = classify(mix, opts);
      c.expect(out.error != ClassifyOutcome::Error::AmbiguousPhase,
               tag.str() + ": AmbiguousPhase");
      if (!out.ok()) {
        ++no_phase;
        continue;
      }
      c.expect(out.result->label.k <= n, tag.str() + ": k exceeds n");
      const int isolated = isolated_support_points(out.result->measure);
      c.expect(isolated <= n + 1, tag.str() + ": " + std::to_string(isolated) +
                                      " isolated support points exceed n+1");
    } catch (const Error& e) {
      c.expect(false, tag.str() + ": threw " + e.what());
    }
  }
  c.expect(no_phase == 0,
           std::to_string(no_phase) + " trials returned NoPhaseFound");
  const double dt = seconds_since(t0);
  c.expect(dt < 600.0, "runtime " + std::to_string(dt) + "s exceeds 10 minutes");
  std::printf("  (criterion 8 corpus: 50 mixtures in %.1fs)\n", dt);
  return c;
}

// Criterion 9: two-component boundary structure of lambda x^3 + (1-lambda) x^16.
Check criterion9() {
  Check c;
  const BoundaryTable table = two_component_boundaries(3, 16);
  c.expect(table.found_1to2, "1-RSB/2-RSB boundary not found");
  c.expect(table.found_2to2f, "2-RSB/2-FRSB boundary not found");
  c.expect(table.found_2fto1f, "2-FRSB/1-FRSB boundary not found");
  c.expect(table.found_1fto1, "1-FRSB/1-RSB boundary not found");
  if (!c.ok) return c;
  c.expect(table.lambda_1to2 < table.lambda_2to2f, "lambda_{1->2} >= lambda_{2->2F}");
  c.expect(table.lambda_2to2f < table.lambda_2fto1f, "lambda_{2->2F} >= lambda_{2F->1F}");
  c.expect(table.lambda_2fto1f < table.lambda_1fto1, "lambda_{2F->1F} >= lambda_{2F->1}");
  std::printf("  (boundaries: %.6f < %.6f < %.6f < %.6f)\n", table.lambda_1to2,
              table.lambda_2to2f, table.lambda_2fto1f, table.lambda_1fto1);

  const ClassifyOptions opts = no_oracle_opts();
  auto label_mid = [&](double lo, double hi) {
    return classify(Mixture::make({3, 16}, {0.5 * (lo + hi)}, true), opts);
  };
  const ClassifyOutcome a = label_mid(table.lambda_1to2, table.lambda_2to2f);
  c.expect(a.ok() && a.result->label.kind == PhaseKind::RSB && a.result->label.k == 2,
           "midpoint of [1->2, 2->2F] is not 2-RSB");
  const ClassifyOutcome b = label_mid(table.lambda_2to2f, table.lambda_2fto1f);
  c.expect(b.ok() && b.result->label.kind == PhaseKind::FRSB &&
               b.result->label.composition == std::vector<int>{1, 1},
           "midpoint of [2->2F, 2F->1F] is not 2-FRSB (1,1)");
  const ClassifyOutcome d = label_mid(table.lambda_2fto1f, table.lambda_1fto1);
  c.expect(d.ok() && d.result->label.kind == PhaseKind::FRSB && d.result->label.k == 1,
           "midpoint of [2F->1F, 1F->1] is not 1-FRSB");
  return c;
}

struct Criterion {
  int number;
  const char* summary;
  Check (*run)();
};

const Criterion kCriteria[] = {
    {1, "3-RSB example reproduction with strict sign conditions", criterion1},
    {2, "3-FRSB (1,2) example reproduction with corner sign table", criterion2},
    {3, "3-FRSB (2,1) example reproduction with corner sign table", criterion3},
    {4, "3-FRSB (1,1,1) example reproduction", criterion4},
    {5, "optimality verification closes over the corpus", criterion5},
    {6, "oracle energy equivalence", criterion6},
    {7, "kernel property suite", criterion7},
    {8, "randomized structure-theorem corpus", criterion8},
    {9, "two-component boundary structure", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all_ok = true;
  for (const Criterion& cr : kCriteria) {
    if (only != 0 && cr.number != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("uncaught exception: ") + e.what());
    }
    std::printf("criterion %d: %s - %s (%.1fs)%s%s\n", cr.number, c.ok ? "PASS" : "FAIL",
                cr.summary, seconds_since(t0), c.ok ? "" : " -- ",
                c.ok ? "" : c.why.str().c_str());
    std::fflush(stdout);
    all_ok = all_ok && c.ok;
  }
  return all_ok ? 0 : 1;
}
