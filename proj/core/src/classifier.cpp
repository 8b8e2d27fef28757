#include "pspin/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <sstream>
#include <thread>

#include "newton.hpp"

namespace pspin {

namespace {

// Compositions of k into t >= 2 parts, plus every variant with a single
// trailing 0 (which denotes a degenerate final segment reaching 1, so a
// one-real-part composition like (k, 0) is admitted too).
void compositions_rec(int rest, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (rest == 0) {
    if (cur.size() >= 2) out.push_back(cur);
    std::vector<int> with_zero = cur;
    with_zero.push_back(0);
    if (with_zero.size() >= 2) out.push_back(with_zero);
    return;
  }
  for (int s = 1; s <= rest; ++s) {
    cur.push_back(s);
    compositions_rec(rest - s, cur, out);
    cur.pop_back();
  }
}

// Memoized tilde_chain verdicts: the exclusion checks of neighboring
// compositions revisit the same chains many times.
struct ChainCache {
  const Mixture& mix;
  const HsetOptions& hopts;
  std::map<std::vector<int>, bool> memo;

  bool chains(const std::vector<int>& comp) {
    auto it = memo.find(comp);
    if (it != memo.end()) return it->second;
    const bool holds = tilde_chain(mix, comp, hopts).holds;
    memo.emplace(comp, holds);
    return holds;
  }
};

// FRSB exclusions at k < n: no composition with one real part promoted by 1,
// and none with an extra single-break part inserted, may also chain.
bool frsb_exclusions_hold(ChainCache& cache, const std::vector<int>& comp) {
  const bool trailing_zero = comp.back() == 0;
  const std::size_t real_parts = comp.size() - (trailing_zero ? 1 : 0);
  for (std::size_t j = 0; j < real_parts; ++j) {
    std::vector<int> promoted = comp;
    promoted[j] += 1;
    if (cache.chains(promoted)) return false;
  }
  for (std::size_t pos = 0; pos <= real_parts; ++pos) {
    std::vector<int> inserted = comp;
    inserted.insert(inserted.begin() + static_cast<std::ptrdiff_t>(pos), 1);
    if (cache.chains(inserted)) return false;
  }
  return true;
}

// Structural closeness to a phase boundary: any collapsing gap in the
// measure's support or density levels.
bool measure_near_boundary(const ParisiMeasure& nu, double window) {
  double prev_m = -1.0;
  for (const MeasureBlock& b : nu.blocks) {
    if (b.b - b.a < window) return true;
    if (prev_m >= 0.0 && b.m - prev_m < window) return true;
    prev_m = b.m;
  }
  for (const MeasureSegment& s : nu.segments)
    if (s.b - s.a < window) return true;
  return false;
}

std::string phase_name(const PhaseLabel& label) {
  std::ostringstream os;
  switch (label.kind) {
    case PhaseKind::RS: return "RS";
    case PhaseKind::RSB: os << label.k << "-RSB"; break;
    case PhaseKind::FRSB: {
      os << label.k << "-FRSB(";
      for (std::size_t i = 0; i < label.composition.size(); ++i)
        os << (i ? "," : "") << label.composition[i];
      os << ")";
      break;
    }
  }
  return os.str();
}

struct PhaseCandidate {
  PhaseLabel label;
  bool criterion = false;
  bool solved = false;
  bool verified = false;
  ParisiMeasure measure;
  VerificationReport verification;
  std::string note;
};

}  // namespace

std::vector<std::vector<int>> frsb_compositions(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions_rec(k, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

ClassifyOutcome classify(const Mixture& mix, const ClassifyOptions& opts) {
  const int n = static_cast<int>(mix.components());
  ClassifyOutcome outcome;

  // Enumerate all candidate phases in search order: RS, then k-RSB for
  // k = 1..n, then FRSB compositions in ascending k then lexicographic order.
  std::vector<PhaseCandidate> cands;
  {
    PhaseCandidate rs;
    rs.label.kind = PhaseKind::RS;
    cands.push_back(std::move(rs));
  }
  for (int k = 1; k <= n; ++k) {
    PhaseCandidate c;
    c.label.kind = PhaseKind::RSB;
    c.label.k = k;
    cands.push_back(std::move(c));
  }
  for (int k = 1; k <= n; ++k)
    for (const std::vector<int>& comp : frsb_compositions(k)) {
      PhaseCandidate c;
      c.label.kind = PhaseKind::FRSB;
      c.label.k = k;
      c.label.composition = comp;
      c.label.f_set = f_set_of_composition(comp);
      cands.push_back(std::move(c));
    }

  ChainCache cache{mix, opts.hset, {}};
  auto criterion_of = [&](const PhaseLabel& label) {
    switch (label.kind) {
      case PhaseKind::RS:
        // RS has no separate chain criterion; the optimality verification of
        // the single-atom measure is the whole test.
        return true;
      case PhaseKind::RSB: {
        if (!cache.chains({label.k})) return false;
        return label.k == n || !cache.chains({label.k + 1});
      }
      case PhaseKind::FRSB: {
        if (!cache.chains(label.composition)) return false;
        return label.k == n || frsb_exclusions_hold(cache, label.composition);
      }
    }
    return false;
  };

  auto construct_impl = [&](PhaseCandidate& c) {
    c.solved = true;
    switch (c.label.kind) {
      case PhaseKind::RS:
        c.measure = rs_measure(mix);
        break;
      case PhaseKind::RSB: {
        Result<RsbSolution> sol = solve_rsb(mix, c.label.k, opts.solver);
        if (!sol.ok()) {
          c.note = "solver: " + sol.error;
          return;
        }
        c.measure = sol->measure;
        break;
      }
      case PhaseKind::FRSB: {
        Result<FrsbSolution> sol = solve_frsb(mix, c.label.composition, opts.solver);
        if (!sol.ok()) {
          c.note = "solver: " + sol.error;
          return;
        }
        c.measure = sol->measure;
        break;
      }
    }
    c.verification = verify_parisi(c.measure, opts.verify);
    c.verified = c.verification.passed;
    if (!c.verified) c.note = "verification failed";
  };

  // A solver Error while building a candidate (e.g. kernel degeneracy driven
  // by floating-point underflow at extreme exponents) disqualifies that
  // candidate only; other candidates may still verify.
  auto construct = [&](PhaseCandidate& c) {
    try {
      construct_impl(c);
    } catch (const Error& e) {
      c.verified = false;
      c.note = std::string("solver: ") + e.what();
    }
  };

  // Pass 1: criterion-gated. Every candidate whose chain criterion holds is
  // constructed and verified, so a uniqueness violation would be visible.
  std::vector<std::size_t> verified_idx;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    PhaseCandidate& c = cands[i];
    try {
      c.criterion = criterion_of(c.label);
    } catch (const Error& e) {
      c.criterion = false;
      c.note = std::string("criterion: ") + e.what();
      continue;
    }
    if (!c.criterion) {
      c.note = "criterion fails";
      continue;
    }
    construct(c);
    if (c.verified) verified_idx.push_back(i);
  }

  auto diagnostics = [&]() {
    std::ostringstream diag;
    for (const PhaseCandidate& c : cands)
      if (!c.note.empty()) diag << phase_name(c.label) << ": " << c.note << "; ";
    return diag.str();
  };

  if (verified_idx.size() > 1) {
    outcome.error = ClassifyOutcome::Error::AmbiguousPhase;
    std::ostringstream detail;
    detail << "multiple verified candidates:";
    for (std::size_t i : verified_idx) detail << " " << phase_name(cands[i].label);
    outcome.detail = detail.str();
    return outcome;
  }

  std::size_t chosen = cands.size();
  bool criterion_agrees = false;
  if (verified_idx.size() == 1) {
    chosen = verified_idx.front();
    criterion_agrees = true;
  } else {
    // Pass 2 (fallback near phase boundaries): try the constructive route for
    // candidates whose criterion failed; the first verified measure wins.
    for (std::size_t i = 0; i < cands.size(); ++i) {
      PhaseCandidate& c = cands[i];
      if (c.solved) continue;
      construct(c);
      if (c.verified) {
        chosen = i;
        break;
      }
    }
  }

  if (chosen == cands.size()) {
    outcome.error = ClassifyOutcome::Error::NoPhaseFound;
    outcome.detail = diagnostics();
    return outcome;
  }

  ClassificationResult res;
  res.label = cands[chosen].label;
  res.measure = std::move(cands[chosen].measure);
  res.verification = cands[chosen].verification;
  res.criterion_agrees = criterion_agrees;
  res.energy = cs_energy(res.measure);
  res.near_boundary = measure_near_boundary(res.measure, opts.boundary_window);
  if (opts.oracle_check) {
    OracleOptions oopts = opts.oracle;
    oopts.N = opts.oracle_N;
    const OracleSolution osol = minimize_cs(mix, oopts);
    res.oracle_gap = std::abs(res.energy - osol.energy);
    res.oracle_ok = res.oracle_gap <= opts.oracle_gap_tol * std::abs(res.energy);
  }
  outcome.result = std::move(res);
  return outcome;
}

std::vector<ScanRow> phase_scan(const std::vector<int>& exponents,
                                const std::vector<ScanAxis>& axes,
                                const ClassifyOptions& opts) {
  // Expand the grid in deterministic row-major order.
  std::vector<std::vector<double>> points;
  std::vector<double> cur;
  const bool derive_last = axes.size() + 1 == exponents.size();
  std::function<void(std::size_t)> expand = [&](std::size_t axis) {
    if (axis == axes.size()) {
      points.push_back(cur);
      return;
    }
    const ScanAxis& a = axes[axis];
    if (a.step <= 0.0) {
      cur.push_back(a.lo);
      expand(axis + 1);
      cur.pop_back();
      return;
    }
    for (double v = a.lo; v <= a.hi + 1e-12; v += a.step) {
      cur.push_back(v);
      expand(axis + 1);
      cur.pop_back();
    }
  };
  expand(0);

  std::vector<ScanRow> rows(points.size());
  auto run_row = [&](std::size_t i) {
    ScanRow row;
    row.weights = points[i];
    try {
      const Mixture mix = Mixture::make(exponents, points[i], derive_last);
      row.weights = mix.weights();
      const ClassifyOutcome out = classify(mix, opts);
      if (out.ok()) {
        row.ok = true;
        row.label = out.result->label;
        row.energy = out.result->energy;
        row.oracle_gap = out.result->oracle_gap;
        std::ostringstream flags;
        if (out.result->near_boundary) flags << "near_boundary;";
        if (!out.result->criterion_agrees) flags << "criterion_disagrees;";
        if (opts.oracle_check && !out.result->oracle_ok) flags << "oracle_gap_large;";
        row.flags = flags.str();
      } else {
        row.flags = (out.error == ClassifyOutcome::Error::AmbiguousPhase ? "AmbiguousPhase: "
                                                                         : "NoPhaseFound: ") +
                    out.detail;
      }
    } catch (const Error& e) {
      row.flags = std::string("invalid: ") + e.what();
    }
    return row;
  };

  // Worker pool over rows; results land at fixed indices so the output order
  // is independent of scheduling.
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(rows.size())));
  std::vector<std::future<void>> futs;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    futs.push_back(std::async(std::launch::async, [&]() {
      for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
        rows[i] = run_row(i);
    }));
  for (auto& f : futs) f.get();
  return rows;
}

BoundaryTable two_component_boundaries(int p, int s, const ClassifyOptions& opts) {
  if (!(3 <= p && p < s)) fail(Errc::DomainError, "two_component_boundaries requires 3 <= p < s");
  BoundaryTable table;

  auto family = [&](double lambda) { return Mixture::make({p, s}, {lambda}, true); };

  // Joint 2x2 Newton solve in (x, lambda) of two kernel equalities.
  auto solve_pair = [&](auto&& eq1, auto&& eq2, double& x_out, double& lambda_out) {
    auto residual = [&](const std::vector<double>& u) -> std::vector<double> {
      const double x = u[0], lam = u[1];
      if (x < 1e-6 || x > 1.0 - 1e-6 || lam < 1e-6 || lam > 1.0 - 1e-6)
        return {10.0, 10.0};
      try {
        const Mixture mix = family(lam);
        return {eq1(mix, x), eq2(mix, x)};
      } catch (const Error&) {
        return {10.0, 10.0};
      }
    };
    detail::NewtonOptions nopts;
    struct Seed {
      double norm, x, lam;
    };
    std::vector<Seed> seeds;
    for (int i = 1; i < 40; ++i)
      for (int j = 1; j < 40; ++j) {
        const double x = i / 40.0, lam = j / 40.0;
        const double norm = detail::sup_norm(residual({x, lam}));
        if (std::isfinite(norm) && norm < 9.0) seeds.push_back({norm, x, lam});
      }
    std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
      if (a.norm != b.norm) return a.norm < b.norm;
      if (a.x != b.x) return a.x < b.x;
      return a.lam < b.lam;
    });
    if (seeds.size() > 40) seeds.resize(40);
    for (const Seed& sd : seeds) {
      std::vector<double> u{sd.x, sd.lam};
      if (detail::newton(residual, u, nopts) && u[0] > 0.0 && u[0] < 1.0 && u[1] > 0.0 &&
          u[1] < 1.0) {
        x_out = u[0];
        lambda_out = u[1];
        return true;
      }
    }
    return false;
  };

  table.found_1to2 = solve_pair(
      [](const Mixture& m, double x) { return h(m, 0.0, x, r1(m, 0.0, x, 1.0)); },
      [](const Mixture& m, double x) { return h(m, x, 1.0, r1(m, x, 1.0, 0.0)); },
      table.x_1to2, table.lambda_1to2);
  table.found_2to2f = solve_pair(
      [](const Mixture& m, double x) { return h_ext(m, 0.0, x, r2(m, 0.0, x)); },
      [](const Mixture& m, double x) { return h_ext(m, x, 1.0, 1.0 / r2(m, 1.0, x)); },
      table.x_2to2f, table.lambda_2to2f);

  // Classification bisection along lambda for the remaining two boundaries
  // (oracle off: only the label matters here).
  ClassifyOptions fast = opts;
  fast.oracle_check = false;
  auto label_at = [&](double lam) -> std::optional<PhaseLabel> {
    const ClassifyOutcome out = classify(family(lam), fast);
    if (!out.ok()) return std::nullopt;
    return out.result->label;
  };
  auto is_2frsb = [](const std::optional<PhaseLabel>& l) {
    return l && l->kind == PhaseKind::FRSB && l->k == 2;
  };
  auto is_frsb = [](const std::optional<PhaseLabel>& l) {
    return l && l->kind == PhaseKind::FRSB;
  };

  if (table.found_2to2f) {
    // 2-FRSB holds just above lambda_2to2f; march until it hands over to
    // 1-FRSB and bisect, then repeat for the FRSB -> RSB handover.
    const double lo = table.lambda_2to2f + 1e-3;
    if (is_2frsb(label_at(lo))) {
      const double step = 0.02;
      double hi = lo;
      while (hi < 0.999 && is_2frsb(label_at(std::min(hi + step, 0.999)))) hi += step;
      double hi2 = std::min(hi + step, 0.999);
      for (int it = 0; it < 14; ++it) {
        const double mid = 0.5 * (hi + hi2);
        if (is_2frsb(label_at(mid)))
          hi = mid;
        else
          hi2 = mid;
      }
      table.lambda_2fto1f = 0.5 * (hi + hi2);
      table.found_2fto1f = true;

      const double flo = table.lambda_2fto1f + 1e-3;
      if (is_frsb(label_at(flo))) {
        double fhi = flo;
        while (fhi < 0.999 && is_frsb(label_at(std::min(fhi + step, 0.999)))) fhi += step;
        double fhi2 = std::min(fhi + step, 0.999);
        for (int it = 0; it < 14; ++it) {
          const double mid = 0.5 * (fhi + fhi2);
          if (is_frsb(label_at(mid)))
            fhi = mid;
          else
            fhi2 = mid;
        }
        table.lambda_1fto1 = 0.5 * (fhi + fhi2);
        table.found_1fto1 = true;
      }
    }
  }
  return table;
}

}  // namespace pspin
