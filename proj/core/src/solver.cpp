#include "pspin/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "block.hpp"
#include "newton.hpp"

namespace pspin {

namespace {

using detail::BlockKind;
using detail::BlockSpec;

constexpr double kEdge = 1e-6;

double pow_sign(double v, int sign) {
  if (sign > 0) return v;
  if (v == 0.0) return INFINITY;
  if (std::isinf(v)) return 0.0;
  return 1.0 / v;
}

double interval_scale(const Mixture& mix, double a, double b) {
  return (b - a) * (mix.xi1(b) - mix.xi1(a));
}

// Innermost equation h(q_{k-1}, 1, 1+z_k) = 0: h is strictly increasing in its
// z argument with limits of opposite sign, so bisection in log z is exact.
double solve_one_plus_zk(const Mixture& mix, double q_last) {
  double lo = -30.0, hi = 30.0;
  // 64 halvings resolve log z to 60 * 2^-64, far below the Newton tolerance.
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h(mix, q_last, 1.0, std::exp(mid)) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

// Tail recursion on one chain: given the tail value at one end, propagate
// T_{l-1} T_l [xi'(q_l) - xi'(q_{l-1})] = q_l - q_{l-1} across the chain.
std::vector<double> tails_from_left(const Mixture& mix, const Chain& c, double t_left) {
  std::vector<double> t(static_cast<std::size_t>(c.s()) + 1);
  t[0] = t_left;
  for (int l = 1; l <= c.s(); ++l)
    t[static_cast<std::size_t>(l)] =
        (c[l] - c[l - 1]) /
        ((mix.xi1(c[l]) - mix.xi1(c[l - 1])) * t[static_cast<std::size_t>(l - 1)]);
  return t;
}

std::vector<double> tails_from_right(const Mixture& mix, const Chain& c, double t_right) {
  std::vector<double> t(static_cast<std::size_t>(c.s()) + 1);
  t[static_cast<std::size_t>(c.s())] = t_right;
  for (int l = c.s(); l >= 1; --l)
    t[static_cast<std::size_t>(l - 1)] =
        (c[l] - c[l - 1]) /
        ((mix.xi1(c[l]) - mix.xi1(c[l - 1])) * t[static_cast<std::size_t>(l)]);
  return t;
}

bool cond2_holds(const KernelProfile& profile, double star, double tol) {
  return profile.Y <= star + tol * (1.0 + star) && star * profile.Z <= 1.0 + tol;
}

// Condition (3) on one interval: every critical level crossing x* must satisfy
// h(x*, q_l, r1(x*, q_l, q_{l-1})) >= 0 (up to relative slack).
bool cond3_interval(const Mixture& mix, const std::vector<double>& q, int l, double level,
                    int parity, double tol, std::string* reason) {
  const std::vector<double> xs = critical_points(mix, q, l, level, parity);
  if (xs.size() > 2) {
    if (reason) *reason = "more than two critical points in one interval (numeric anomaly)";
    return false;
  }
  const double a = q[static_cast<std::size_t>(l - 1)];
  const double b = q[static_cast<std::size_t>(l)];
  const double scale = interval_scale(mix, a, b);
  for (double x : xs) {
    const double value = h_ext(mix, x, b, r1(mix, x, b, a));
    if (value < -tol * scale) {
      if (reason) *reason = "condition (3) violated at a critical point";
      return false;
    }
  }
  return true;
}

}  // namespace

double rsb_residual(const Mixture& mix, const std::vector<double>& q, double one_plus_zk, int l,
                    bool dual_form) {
  const Chain c{std::vector<double>(q)};
  const int k = c.s();
  const double a = c[l - 1], b = c[l];
  const bool even = ((k - l) % 2) == 0;
  double z;
  if (!dual_form) {
    const double f = chain_F(mix, c, l);
    z = even ? one_plus_zk * r2(mix, a, b) / f : r2(mix, a, b) / (f * one_plus_zk);
  } else {
    const double f = chain_F(mix, c, l - 1);
    const double r = r2(mix, b, a);
    if (r == 0.0 && f == 0.0)
      fail(Errc::DegenerateArguments,
           "dual residual form is 0/0 when F_{l-1} and r2(q_l,q_{l-1}) both vanish (l = 1 with "
           "q_0 = 0)");
    z = even ? one_plus_zk * f / r : f / (r * one_plus_zk);
  }
  return h_ext(mix, a, b, z);
}

std::vector<double> critical_points(const Mixture& mix, const std::vector<double>& q, int l,
                                    double level, int parity) {
  const double a = q[static_cast<std::size_t>(l - 1)];
  const double b = q[static_cast<std::size_t>(l)];
  std::vector<double> aug(q.begin(), q.end());
  aug.insert(aug.begin() + l, 0.0);
  auto value = [&](double x) {
    aug[static_cast<std::size_t>(l)] = x;
    return pow_sign(chain_A(mix, Chain{std::vector<double>(aug)}, l), parity) - level;
  };
  const int grid = 2048;
  std::vector<double> roots;
  double prev_x = 0.0, prev_v = 0.0;
  bool have_prev = false;
  for (int i = 1; i < grid; ++i) {
    const double x = a + (b - a) * i / grid;
    const double v = value(x);
    if (!std::isfinite(v)) {
      have_prev = false;
      continue;
    }
    if (have_prev && (v > 0) != (prev_v > 0)) {
      double lo = prev_x, hi = x, flo = prev_v;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = value(mid);
        if (!std::isfinite(fm)) break;
        if ((fm > 0) == (flo > 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_v = v;
    have_prev = true;
  }
  return roots;
}

Result<RsbSolution> solve_rsb(const Mixture& mix, int k, const SolverOptions& opts) {
  const int n = static_cast<int>(mix.components());
  if (k < 1 || k > n) return Result<RsbSolution>::failure("k must be between 1 and n");

  std::string reason = "no root of the boundary system at grid resolution";

  auto try_accept = [&](const std::vector<double>& q) -> std::optional<RsbSolution> {
    const Chain c{std::vector<double>(q)};
    const double w = solve_one_plus_zk(mix, q[static_cast<std::size_t>(k - 1)]);
    if (!(w > 1.0)) {
      reason = "recovered z_k is not positive";
      return std::nullopt;
    }
    RsbSolution sol;
    sol.k = k;
    sol.q = q;
    sol.zk = w - 1.0;
    sol.delta = std::sqrt((1.0 - q[static_cast<std::size_t>(k - 1)]) /
                          ((mix.xi1(1.0) - mix.xi1(q[static_cast<std::size_t>(k - 1)])) * w));
    const std::vector<double> t = tails_from_right(mix, c, sol.delta);
    for (int l = 1; l <= k; ++l) {
      const double dm = t[static_cast<std::size_t>(l - 1)] - t[static_cast<std::size_t>(l)];
      sol.m.push_back(dm / (c[l] - c[l - 1]));
      sol.z.push_back(dm / sol.delta);
    }
    for (int l = 1; l <= k; ++l) {
      if (!(sol.m[static_cast<std::size_t>(l - 1)] > 0.0) ||
          (l >= 2 && !(sol.m[static_cast<std::size_t>(l - 1)] >
                       sol.m[static_cast<std::size_t>(l - 2)]))) {
        reason = "recovered m sequence is not strictly increasing and positive";
        return std::nullopt;
      }
    }
    for (int l = 1; l <= k; ++l)
      sol.residuals.push_back(rsb_residual(mix, q, w, l) / interval_scale(mix, c[l - 1], c[l]));

    const KernelProfile profile = chain_profile(mix, c);
    sol.cond2_ok = cond2_holds(profile, w, opts.cond_tol);
    if (!sol.cond2_ok) {
      reason = "condition (2) fails: 1+z_k outside [Y, 1/Z]";
      return std::nullopt;
    }
    sol.cond3_ok = true;
    if (k < n) {
      for (int l = 1; l <= k && sol.cond3_ok; ++l) {
        const int parity = ((k - l) % 2 == 0) ? 1 : -1;
        sol.cond3_ok = cond3_interval(mix, q, l, w, parity, opts.cond_tol, &reason);
      }
      if (!sol.cond3_ok) return std::nullopt;
    }

    sol.measure.mixture = mix;
    sol.measure.delta = sol.delta;
    for (int l = 1; l <= k; ++l)
      sol.measure.blocks.push_back({c[l - 1], c[l], sol.m[static_cast<std::size_t>(l - 1)]});
    try {
      validate_measure(sol.measure);
    } catch (const Error& e) {
      reason = std::string("assembled measure invalid: ") + e.what();
      return std::nullopt;
    }
    return sol;
  };

  if (k == 1) {
    if (auto sol = try_accept({0.0, 1.0})) return Result<RsbSolution>::success(std::move(*sol));
    return Result<RsbSolution>::failure(reason);
  }

  const int dims = k - 1;
  auto residual = [&](const std::vector<double>& u) -> std::vector<double> {
    double violation = 0.0;
    for (double v : u) {
      if (v < kEdge) violation += kEdge - v;
      if (v > 1.0 - kEdge) violation += v - (1.0 - kEdge);
    }
    for (int i = 1; i < dims; ++i) {
      const double gap = u[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i - 1)];
      if (gap < opts.min_gap * 0.01) violation += opts.min_gap * 0.01 - gap;
    }
    if (1.0 - u.back() < opts.min_gap * 0.01) violation += opts.min_gap * 0.01 - (1.0 - u.back());
    if (violation > 0.0)
      return std::vector<double>(static_cast<std::size_t>(dims), 10.0 + 1e4 * violation);
    std::vector<double> q;
    q.reserve(static_cast<std::size_t>(k) + 1);
    q.push_back(0.0);
    q.insert(q.end(), u.begin(), u.end());
    q.push_back(1.0);
    const double w = solve_one_plus_zk(mix, u.back());
    std::vector<double> res;
    res.reserve(static_cast<std::size_t>(dims));
    try {
      for (int l = 1; l < k; ++l)
        res.push_back(rsb_residual(mix, q, w, l) /
                      interval_scale(mix, q[static_cast<std::size_t>(l - 1)],
                                     q[static_cast<std::size_t>(l)]));
    } catch (const Error&) {
      return std::vector<double>(static_cast<std::size_t>(dims), 1e6);
    }
    return res;
  };

  detail::NewtonOptions nopts;
  nopts.tol = opts.newton_tol;
  const int per_list = dims == 1 ? std::max(opts.grid, 400) : std::max(opts.grid / 4, 60);
  const std::vector<std::vector<double>> roots = detail::multistart_increasing_roots(
      residual, dims, detail::coord_candidates(per_list), nopts);

  for (const std::vector<double>& u : roots) {
    bool ok = u.front() > opts.min_gap && 1.0 - u.back() > opts.min_gap;
    for (int i = 1; i < dims && ok; ++i)
      ok = u[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i - 1)] > opts.min_gap;
    if (!ok) {
      reason = "root rejected by the degeneracy guard (collapsed q's)";
      continue;
    }
    std::vector<double> q;
    q.push_back(0.0);
    q.insert(q.end(), u.begin(), u.end());
    q.push_back(1.0);
    if (auto sol = try_accept(q)) return Result<RsbSolution>::success(std::move(*sol));
  }
  return Result<RsbSolution>::failure(reason);
}

Result<FrsbSolution> solve_frsb(const Mixture& mix, const std::vector<int>& composition,
                                const SolverOptions& opts) {
  using R = Result<FrsbSolution>;
  const int n = static_cast<int>(mix.components());
  const int t = static_cast<int>(composition.size());
  if (t < 2) return R::failure("composition must have at least two parts (t=1 is plain RSB)");
  const bool trailing_zero = composition.back() == 0;
  const int real_blocks = trailing_zero ? t - 1 : t;
  int k = 0;
  for (int j = 0; j < t; ++j) {
    const int s = composition[static_cast<std::size_t>(j)];
    if (s < 1 && !(trailing_zero && j == t - 1))
      return R::failure("composition parts must be >= 1");
    k += s;
  }
  if (k > n) return R::failure("composition sum exceeds the number of components");
  if (real_blocks < 1) return R::failure("composition has no real blocks");

  HsetOptions hopts;
  hopts.newton_tol = opts.newton_tol;
  hopts.min_gap = opts.min_gap;

  std::vector<BlockSpec> specs;
  std::vector<std::vector<Chain>> roots;
  for (int j = 0; j < real_blocks; ++j) {
    BlockSpec bs;
    bs.s = composition[static_cast<std::size_t>(j)];
    if (j == 0)
      bs.kind = BlockKind::PinFirst;
    else if (j == real_blocks - 1 && !trailing_zero)
      bs.kind = BlockKind::PinLast;
    else
      bs.kind = BlockKind::Free;
    specs.push_back(bs);
    std::vector<Chain> r = detail::solve_block_all(mix, bs, hopts);
    if (r.empty()) return R::failure("block " + std::to_string(j + 1) + " has no solution");
    roots.push_back(std::move(r));
  }

  std::string reason = "no block combination satisfies the structural conditions";

  auto try_combination = [&](const std::vector<std::size_t>& pick) -> std::optional<FrsbSolution> {
    FrsbSolution sol;
    sol.composition = composition;
    for (int j = 0; j < real_blocks; ++j) {
      const Chain& c = roots[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]];
      FrsbBlock blk;
      blk.chain = c;
      blk.star = detail::block_star(mix, specs[static_cast<std::size_t>(j)], c);
      blk.F_first = chain_F(mix, c, 0);
      blk.F_last = chain_F(mix, c, c.s());
      sol.blocks.push_back(std::move(blk));
    }
    // Ordering with genuine segments between consecutive blocks (and up to 1
    // for a trailing degenerate part).
    for (int j = 0; j + 1 < real_blocks; ++j) {
      if (sol.blocks[static_cast<std::size_t>(j + 1)].chain.front() -
              sol.blocks[static_cast<std::size_t>(j)].chain.back() <
          opts.min_gap) {
        reason = "blocks do not order with a genuine segment between them";
        return std::nullopt;
      }
    }
    if (trailing_zero &&
        1.0 - sol.blocks.back().chain.back() < opts.min_gap) {
      reason = "trailing segment to 1 collapses";
      return std::nullopt;
    }

    // Tail recursion per block, pinned by segment continuity: the tail equals
    // xi''^{-1/2} at every block edge that touches a segment.
    ParisiMeasure& nu = sol.measure;
    nu.mixture = mix;
    std::vector<std::vector<double>> tails(static_cast<std::size_t>(real_blocks));
    for (int j = 0; j < real_blocks; ++j) {
      const Chain& c = sol.blocks[static_cast<std::size_t>(j)].chain;
      const bool right_pinned = trailing_zero || j < real_blocks - 1;
      if (right_pinned)
        tails[static_cast<std::size_t>(j)] =
            tails_from_right(mix, c, 1.0 / std::sqrt(mix.xi2(c.back())));
      else
        tails[static_cast<std::size_t>(j)] =
            tails_from_left(mix, c, 1.0 / std::sqrt(mix.xi2(c.front())));
    }
    nu.delta = trailing_zero ? 1.0 / std::sqrt(mix.xi2(1.0))
                             : tails[static_cast<std::size_t>(real_blocks - 1)].back();
    if (!(nu.delta > 0.0)) {
      reason = "recovered delta not positive";
      return std::nullopt;
    }
    double prev_m = 0.0;
    for (int j = 0; j < real_blocks; ++j) {
      const Chain& c = sol.blocks[static_cast<std::size_t>(j)].chain;
      const std::vector<double>& tl = tails[static_cast<std::size_t>(j)];
      for (int l = 1; l <= c.s(); ++l) {
        const double m_l = (tl[static_cast<std::size_t>(l - 1)] - tl[static_cast<std::size_t>(l)]) /
                           (c[l] - c[l - 1]);
        if (!(m_l > 0.0) || !(m_l > prev_m)) {
          reason = "recovered m sequence is not strictly increasing and positive";
          return std::nullopt;
        }
        prev_m = m_l;
        nu.blocks.push_back({c[l - 1], c[l], m_l});
      }
      if (j + 1 < real_blocks)
        nu.segments.push_back(
            {c.back(), sol.blocks[static_cast<std::size_t>(j + 1)].chain.front()});
    }
    if (trailing_zero) nu.segments.push_back({sol.blocks.back().chain.back(), 1.0});
    try {
      validate_measure(nu);
    } catch (const Error& e) {
      reason = std::string("assembled measure invalid: ") + e.what();
      return std::nullopt;
    }

    for (int j = 0; j < real_blocks; ++j) {
      const Chain& c = sol.blocks[static_cast<std::size_t>(j)].chain;
      std::vector<double> res =
          detail::block_residual(mix, specs[static_cast<std::size_t>(j)], c);
      sol.residuals.insert(sol.residuals.end(), res.begin(), res.end());
    }

    sol.cond2_ok = true;
    for (int j = 0; j < real_blocks && sol.cond2_ok; ++j) {
      const KernelProfile profile =
          chain_profile(mix, sol.blocks[static_cast<std::size_t>(j)].chain);
      sol.cond2_ok =
          cond2_holds(profile, sol.blocks[static_cast<std::size_t>(j)].star, opts.cond_tol);
    }
    if (!sol.cond2_ok) {
      reason = "condition (2) fails for a block";
      return std::nullopt;
    }

    sol.cond3_ok = sol.cond4_ok = true;
    if (k < n) {
      for (int j = 0; j < real_blocks && sol.cond3_ok; ++j) {
        const Chain& c = sol.blocks[static_cast<std::size_t>(j)].chain;
        for (int l = 1; l <= c.s() && sol.cond3_ok; ++l) {
          const int parity = ((c.s() - l) % 2 == 0) ? 1 : -1;
          sol.cond3_ok = cond3_interval(mix, c.x, l,
                                        sol.blocks[static_cast<std::size_t>(j)].star, parity,
                                        opts.cond_tol, &reason);
        }
      }
      if (!sol.cond3_ok) return std::nullopt;
      for (const MeasureSegment& seg : nu.segments) {
        for (int i = 0; i <= opts.curvature_grid && sol.cond4_ok; ++i) {
          const double x = seg.a + (seg.b - seg.a) * i / opts.curvature_grid;
          if (mix.phi_star_curvature(x) > 1e-10) sol.cond4_ok = false;
        }
      }
      if (!sol.cond4_ok) {
        reason = "condition (4) fails: positive curvature on a segment";
        return std::nullopt;
      }
    }
    return sol;
  };

  std::vector<std::size_t> pick(static_cast<std::size_t>(real_blocks), 0);
  while (true) {
    if (auto sol = try_combination(pick)) return R::success(std::move(*sol));
    int j = real_blocks - 1;
    for (; j >= 0; --j) {
      if (++pick[static_cast<std::size_t>(j)] < roots[static_cast<std::size_t>(j)].size()) break;
      pick[static_cast<std::size_t>(j)] = 0;
    }
    if (j < 0) break;
  }
  return R::failure(reason);
}

}  // namespace pspin
