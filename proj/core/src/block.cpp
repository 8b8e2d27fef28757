#include "block.hpp"

#include <algorithm>
#include <cmath>

#include "newton.hpp"

namespace pspin::detail {

namespace {

constexpr double kEdge = 1e-6;  // free coordinates kept inside (kEdge, 1-kEdge)

int per_list_for_dims(int dims, int base_grid) {
  switch (dims) {
    case 1: return std::max(base_grid, 400);
    case 2: return std::max(base_grid / 4, 60);
    case 3: return 40;
    default: return 16;
  }
}

double pow_sign(double v, int sign) {
  if (sign > 0) return v;
  if (v == 0.0) return INFINITY;
  if (std::isinf(v)) return 0.0;
  return 1.0 / v;
}

}  // namespace

std::vector<double> coord_candidates(int per_list) {
  std::vector<double> v;
  v.reserve(2 * per_list);
  for (int i = 0; i < per_list; ++i) {
    const double u = (i + 0.5) / per_list;
    v.push_back(kEdge + u * (1.0 - 2.0 * kEdge));
  }
  // Geometric refinement toward 1, where high-exponent mixtures concentrate
  // their structure.
  const double lo = std::log(1e-4), hi = std::log(0.6);
  for (int i = 0; i < per_list; ++i) {
    const double t = per_list == 1 ? lo : lo + (hi - lo) * i / (per_list - 1);
    v.push_back(1.0 - std::exp(t));
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Chain block_chain(const BlockSpec& bs, const std::vector<double>& unknowns) {
  Chain c;
  c.x.reserve(bs.s + 1);
  if (bs.kind == BlockKind::PinFirst) c.x.push_back(0.0);
  c.x.insert(c.x.end(), unknowns.begin(), unknowns.end());
  if (bs.kind == BlockKind::PinLast) c.x.push_back(1.0);
  return c;
}

double block_star(const Mixture& m, const BlockSpec& bs, const Chain& c) {
  if (bs.kind == BlockKind::PinLast)
    return pow_sign(chain_F(m, c, 0), (bs.s % 2 == 0) ? 1 : -1);
  return chain_F(m, c, bs.s);
}

std::vector<double> block_residual(const Mixture& m, const BlockSpec& bs, const Chain& c) {
  const int s = bs.s;
  const double star = block_star(m, bs, c);
  std::vector<double> res;
  res.reserve(s + (bs.kind == BlockKind::Free ? 1 : 0));
  for (int l = 1; l <= s; ++l) {
    const int sign = ((s - l) % 2 == 0) ? 1 : -1;
    const double f_l = chain_F(m, c, l);
    const double z = r2(m, c[l - 1], c[l]) / f_l * pow_sign(star, sign);
    // Normalize by the natural h-scale of the interval so that nearly
    // clustered chains (where every raw h vanishes) are not pseudo-roots.
    const double scale = (c[l] - c[l - 1]) * (m.xi1(c[l]) - m.xi1(c[l - 1]));
    res.push_back(h_ext(m, c[l - 1], c[l], z) / scale);
  }
  if (bs.kind == BlockKind::Free) {
    // The linking equality degenerates like range^2 when the whole chain
    // clusters (its quadratic coefficient is the phi*-curvature quantity), so
    // normalize by range^2 to keep the diagonal from acting as a pseudo-root.
    const double f0 = chain_F(m, c, 0);
    const double range = c[s] - c[0];
    res.push_back((f0 - pow_sign(chain_F(m, c, s), (s % 2 == 0) ? 1 : -1)) / (range * range));
  }
  return res;
}

std::vector<Chain> solve_block_all(const Mixture& m, const BlockSpec& bs,
                                   const HsetOptions& opts) {
  const int dims = bs.s + (bs.kind == BlockKind::Free ? 1 : 0);
  const std::size_t nres =
      static_cast<std::size_t>(bs.s + (bs.kind == BlockKind::Free ? 1 : 0));

  auto residual = [&](const std::vector<double>& u) -> std::vector<double> {
    double violation = 0.0;
    for (double v : u) {
      if (v < kEdge) violation += kEdge - v;
      if (v > 1.0 - kEdge) violation += v - (1.0 - kEdge);
    }
    const Chain c = block_chain(bs, u);
    for (int i = 1; i <= bs.s; ++i) {
      const double gap = c[i] - c[i - 1];
      if (gap < opts.min_gap * 0.01) violation += opts.min_gap * 0.01 - gap;
    }
    if (violation > 0.0) return std::vector<double>(nres, 10.0 + 1e4 * violation);
    try {
      return block_residual(m, bs, c);
    } catch (const Error&) {
      return std::vector<double>(nres, 1e6);
    }
  };

  NewtonOptions nopts;
  nopts.tol = opts.newton_tol;
  const std::vector<double> cand = coord_candidates(per_list_for_dims(dims, opts.grid));
  const std::vector<std::vector<double>> raw =
      multistart_increasing_roots(residual, dims, cand, nopts);

  std::vector<Chain> roots;
  for (const std::vector<double>& x : raw) {
    const Chain c = block_chain(bs, x);
    if (!c.strictly_increasing(opts.min_gap)) continue;
    bool inside = true;
    for (double v : x)
      if (v < kEdge || v > 1.0 - kEdge) inside = false;
    if (!inside) continue;
    roots.push_back(c);
  }
  return roots;
}

}  // namespace pspin::detail
