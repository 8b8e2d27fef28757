#include "pspin/hset.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "block.hpp"
#include "newton.hpp"

namespace pspin {

namespace {

double pow_sign(double v, int sign) {
  if (sign > 0) return v;
  if (v == 0.0) return INFINITY;
  if (std::isinf(v)) return 0.0;
  return 1.0 / v;
}

double combine_z(double factor, double scale) {
  // factor may be 0 or +inf (powers of Z/Y at the boundary); scale > 0 finite.
  if (factor == 0.0) return 0.0;
  if (std::isinf(factor)) return INFINITY;
  return factor * scale;
}

}  // namespace

double KappaReport::min_margin() const {
  double m = INFINITY;
  for (double v : margin_z) m = std::min(m, v);
  for (double v : margin_y) m = std::min(m, v);
  return m;
}

double KappaReport::min_margin_rel() const {
  if (!strict) return -INFINITY;
  double m = INFINITY;
  for (std::size_t i = 0; i < margin_z.size(); ++i) {
    m = std::min(m, margin_z[i] / scale[i]);
    m = std::min(m, margin_y[i] / scale[i]);
  }
  return m;
}

bool KappaReport::satisfied_rel(double tol) const { return strict && min_margin_rel() >= -tol; }

KappaReport condition_kappa(const Mixture& m, const Chain& c, double tol) {
  KappaReport report;
  report.chain = c;
  const int s = c.s();
  if (s < 1) {
    report.reason = "chain too short";
    return report;
  }
  if (!c.strictly_increasing()) {
    report.reason = "ChainNotStrict";
    return report;
  }
  report.strict = true;
  report.profile = chain_profile(m, c);
  report.margin_z.resize(s);
  report.margin_y.resize(s);
  report.scale.resize(s);
  bool ok = true;
  for (int l = 1; l <= s; ++l) {
    report.scale[l - 1] = (c[l] - c[l - 1]) * (m.xi1(c[l]) - m.xi1(c[l - 1]));
    const int parity = ((s - l) % 2 == 0) ? 1 : -1;  // (-1)^{s-l}
    const double scale = r2(m, c[l - 1], c[l]) / report.profile.F[l];
    const double zf = pow_sign(report.profile.Z, -parity);  // Z^{(-1)^{s-l+1}}
    const double yf = pow_sign(report.profile.Y, parity);   // Y^{(-1)^{s-l}}
    const double hz = h_ext(m, c[l - 1], c[l], combine_z(zf, scale));
    const double hy = h_ext(m, c[l - 1], c[l], combine_z(yf, scale));
    report.margin_z[l - 1] = parity * hz;
    report.margin_y[l - 1] = -parity * hy;
    if (report.margin_z[l - 1] < -tol || report.margin_y[l - 1] < -tol) ok = false;
  }
  report.satisfied = ok;
  if (!ok) report.reason = "margin below tolerance";
  return report;
}

namespace {

// Feasibility scan helpers for witnesses and fallback extremal search.
struct ScanBest {
  double score = -INFINITY;  // min margin
  std::vector<double> u;
};

double min_margin_rel_of(const Mixture& m, const Chain& c) {
  if (!c.strictly_increasing()) return -INFINITY;
  try {
    return condition_kappa(m, c, 0.0).min_margin_rel();
  } catch (const Error&) {
    return -INFINITY;
  }
}

// Deterministic pattern search improving `score_fn` (larger is better).
std::vector<double> pattern_search(const std::function<double(const std::vector<double>&)>& score_fn,
                                   std::vector<double> x, double initial_step) {
  double best = score_fn(x);
  double step = initial_step;
  for (int iter = 0; iter < 200 && step > 1e-13; ++iter) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double dir : {+1.0, -1.0}) {
        std::vector<double> trial = x;
        trial[i] = std::clamp(trial[i] + dir * step, 1e-9, 1.0 - 1e-9);
        const double sc = score_fn(trial);
        if (sc > best) {
          best = sc;
          x = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

std::optional<Chain> witness_scan(const Mixture& m, int s, const HsetOptions& opts) {
  if (s == 1) {
    Chain c{0.0, 1.0};
    if (condition_kappa(m, c, opts.tol).satisfied) return c;
    return std::nullopt;
  }
  const int dims = s - 1;
  // Candidate interior coordinates: uniform plus geometric refinement near 1.
  std::vector<double> cand;
  const int per = dims == 1 ? std::max(opts.grid, 1000) : (dims == 2 ? 120 : 40);
  for (int i = 0; i < per; ++i) cand.push_back((i + 0.5) / per);
  const double lo = std::log(1e-4), hi = std::log(0.6);
  for (int i = 0; i < per; ++i)
    cand.push_back(1.0 - std::exp(lo + (hi - lo) * i / std::max(per - 1, 1)));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  auto score = [&](const std::vector<double>& u) {
    Chain c;
    c.x.push_back(0.0);
    c.x.insert(c.x.end(), u.begin(), u.end());
    c.x.push_back(1.0);
    return min_margin_rel_of(m, c);
  };

  ScanBest best;
  std::vector<int> idx(dims);
  for (int i = 0; i < dims; ++i) idx[i] = i;
  const int ncand = static_cast<int>(cand.size());
  std::vector<double> u(dims);
  while (true) {
    for (int i = 0; i < dims; ++i) u[i] = cand[idx[i]];
    const double sc = score(u);
    if (sc > best.score) {
      best.score = sc;
      best.u = u;
    }
    int i = dims - 1;
    for (; i >= 0; --i) {
      if (idx[i] < ncand - (dims - i)) {
        ++idx[i];
        for (int j = i + 1; j < dims; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
    }
    if (i < 0) break;
  }
  if (best.u.empty()) return std::nullopt;
  if (best.score < -opts.tol) {
    best.u = pattern_search(score, best.u, 1.0 / per);
    best.score = score(best.u);
  }
  if (best.score >= -opts.tol) {
    Chain c;
    c.x.push_back(0.0);
    c.x.insert(c.x.end(), best.u.begin(), best.u.end());
    c.x.push_back(1.0);
    return c;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Chain> pinned_witness(const Mixture& m, int s, const HsetOptions& opts) {
  return witness_scan(m, s, opts);
}

std::optional<Chain> extremal_point(const Mixture& m, int s, PinMode pin, Objective objective,
                                    const HsetOptions& opts) {
  if (s < 1) fail(Errc::DomainError, "extremal_point requires s >= 1");
  if (pin == PinMode::Both) return pinned_witness(m, s, opts);

  detail::BlockSpec bs;
  bs.s = s;
  bs.kind = pin == PinMode::First   ? detail::BlockKind::PinFirst
            : pin == PinMode::Last  ? detail::BlockKind::PinLast
                                    : detail::BlockKind::Free;
  const std::vector<Chain> roots = detail::solve_block_all(m, bs, opts);

  std::optional<Chain> best;
  for (const Chain& c : roots) {
    if (!condition_kappa(m, c, opts.tol).satisfied_rel(1e-8)) continue;
    if (!best) {
      best = c;
      continue;
    }
    if (pin == PinMode::None) continue;  // corner point: keep first (lexicographic)
    if (objective == Objective::MaxLast ? c.back() > best->back() : c.front() < best->front())
      best = c;
  }
  if (best) return best;

  // Middle-set corners exist only as solutions of the linking system; a
  // feasibility-driven search would chase the un-pinned set's global extremes,
  // which is not what the chained relation evaluates.
  if (pin == PinMode::None) return std::nullopt;

  // Fallback: direct constrained search over the feasible set at grid
  // resolution (covers extrema at domain corners where no margin binds).
  const int dims = s;
  if (dims > 3) return std::nullopt;
  auto to_chain = [&](const std::vector<double>& u) {
    Chain c;
    if (pin == PinMode::First) c.x.push_back(0.0);
    c.x.insert(c.x.end(), u.begin(), u.end());
    if (pin == PinMode::Last) c.x.push_back(1.0);
    return c;
  };
  const double obj_sign = objective == Objective::MaxLast ? +1.0 : -1.0;
  auto score = [&](const std::vector<double>& u) -> double {
    const Chain c = to_chain(u);
    const double feas = min_margin_rel_of(m, c);
    if (feas < -1e-9) return -1e9 + feas;  // infeasible band, still orderable
    return obj_sign * (objective == Objective::MaxLast ? c.back() : c.front());
  };
  const int per = dims == 1 ? std::max(opts.grid, 1000) : (dims == 2 ? 120 : 40);
  std::vector<double> cand;
  for (int i = 0; i < per; ++i) cand.push_back((i + 0.5) / per);
  const double lo = std::log(1e-4), hi = std::log(0.6);
  for (int i = 0; i < per; ++i)
    cand.push_back(1.0 - std::exp(lo + (hi - lo) * i / std::max(per - 1, 1)));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  ScanBest bestf;
  std::vector<int> idx(dims);
  for (int i = 0; i < dims; ++i) idx[i] = i;
  const int ncand = static_cast<int>(cand.size());
  std::vector<double> u(dims);
  while (true) {
    for (int i = 0; i < dims; ++i) u[i] = cand[idx[i]];
    const double sc = score(u);
    if (sc > bestf.score) {
      bestf.score = sc;
      bestf.u = u;
    }
    int i = dims - 1;
    for (; i >= 0; --i) {
      if (idx[i] < ncand - (dims - i)) {
        ++idx[i];
        for (int j = i + 1; j < dims; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
    }
    if (i < 0) break;
  }
  if (bestf.u.empty() || bestf.score < -1e8) return std::nullopt;
  bestf.u = pattern_search(score, bestf.u, 1.0 / per);
  if (score(bestf.u) < -1e8) return std::nullopt;
  return to_chain(bestf.u);
}

TildeResult tilde_chain(const Mixture& m, const std::vector<int>& composition,
                        const HsetOptions& opts) {
  TildeResult result;
  const int t = static_cast<int>(composition.size());
  if (t < 1) fail(Errc::DomainError, "empty composition");
  for (int j = 0; j < t; ++j) {
    const bool trailing_zero = (j == t - 1 && composition[j] == 0 && t >= 2);
    if (composition[j] < 1 && !trailing_zero)
      fail(Errc::DomainError, "composition parts must be >= 1 (trailing 0 stands for {1})");
  }

  if (t == 1) {
    auto w = pinned_witness(m, composition[0], opts);
    if (!w) {
      result.reason = "no pinned witness at grid resolution";
      return result;
    }
    result.holds = true;
    result.witnesses.push_back(*w);
    return result;
  }

  std::vector<Chain> witnesses;
  for (int j = 0; j < t; ++j) {
    const int s = composition[j];
    if (j == t - 1 && s == 0) {
      witnesses.push_back(Chain{1.0});
      continue;
    }
    std::optional<Chain> c;
    if (j == 0)
      c = extremal_point(m, s, PinMode::First, Objective::MaxLast, opts);
    else if (j == t - 1)
      c = extremal_point(m, s, PinMode::Last, Objective::MinFirst, opts);
    else
      c = extremal_point(m, s, PinMode::None, Objective::MaxLast, opts);
    if (!c) {
      std::ostringstream os;
      os << "extremal point of part " << j + 1 << " (s=" << s << ") not found";
      result.reason = os.str();
      return result;
    }
    witnesses.push_back(*c);
  }
  for (int j = 0; j + 1 < t; ++j) {
    const double e_j = witnesses[j].back();
    const double f_next = witnesses[j + 1].front();
    if (!(e_j <= f_next + 1e-9)) {
      std::ostringstream os;
      os << "ordering fails between parts " << j + 1 << " and " << j + 2 << ": " << e_j << " > "
         << f_next;
      result.reason = os.str();
      result.witnesses = witnesses;
      return result;
    }
  }
  result.holds = true;
  result.witnesses = witnesses;
  return result;
}

}  // namespace pspin
