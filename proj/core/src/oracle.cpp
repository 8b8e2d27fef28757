#include "pspin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace pspin {

namespace {

// Pool-adjacent-violators: Euclidean projection onto the nondecreasing cone.
void pava_nondecreasing(std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> level(n), weight(n);
  std::vector<std::size_t> count(n);
  std::size_t top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    level[top] = v[i];
    weight[top] = 1.0;
    count[top] = 1;
    while (top > 0 && level[top - 1] >= level[top]) {
      const double w = weight[top - 1] + weight[top];
      level[top - 1] = (weight[top - 1] * level[top - 1] + weight[top] * level[top]) / w;
      weight[top - 1] = w;
      count[top - 1] += count[top];
      --top;
    }
    ++top;
  }
  std::size_t i = 0;
  for (std::size_t b = 0; b < top; ++b)
    for (std::size_t c = 0; c < count[b]; ++c) v[i++] = level[b];
}

struct Discretization {
  std::vector<double> x;   // nodes 0..1, size N+1
  std::vector<double> h;   // interval lengths, size N
  std::vector<double> w;   // trapezoid node weights, size N+1
  std::vector<double> xi2; // xi'' at nodes
};

Discretization make_grid(const Mixture& mix, int N) {
  Discretization d;
  d.x.resize(static_cast<std::size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) d.x[static_cast<std::size_t>(i)] = static_cast<double>(i) / N;
  d.h.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i)
    d.h[static_cast<std::size_t>(i)] = d.x[static_cast<std::size_t>(i) + 1] - d.x[static_cast<std::size_t>(i)];
  d.w.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int i = 0; i < N; ++i) {
    d.w[static_cast<std::size_t>(i)] += 0.5 * d.h[static_cast<std::size_t>(i)];
    d.w[static_cast<std::size_t>(i) + 1] += 0.5 * d.h[static_cast<std::size_t>(i)];
  }
  d.xi2.resize(d.x.size());
  for (std::size_t i = 0; i < d.x.size(); ++i) d.xi2[i] = mix.xi2(d.x[i]);
  return d;
}

// Unknowns u = (delta, g_1..g_N): phi_j = delta + sum_{i>j} g_i h_i. The cone
// {delta >= floor, 0 <= g_1 <= ... <= g_N} encodes positive nonincreasing
// concave phi exactly; its projection is a clip plus isotonic regression.
struct Problem {
  const Discretization& d;
  double floor;

  std::vector<double> phi_of(const std::vector<double>& u) const {
    const std::size_t N = d.h.size();
    std::vector<double> phi(N + 1);
    phi[N] = u[0];
    for (std::size_t j = N; j-- > 0;) phi[j] = phi[j + 1] + u[1 + j] * d.h[j];
    return phi;
  }

  double objective(const std::vector<double>& u) const {
    const std::vector<double> phi = phi_of(u);
    double q = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j)
      q += d.w[j] * (d.xi2[j] * phi[j] + 1.0 / phi[j]);
    return 0.5 * q;
  }

  std::vector<double> gradient(const std::vector<double>& u) const {
    const std::size_t N = d.h.size();
    const std::vector<double> phi = phi_of(u);
    std::vector<double> dnode(N + 1);
    for (std::size_t j = 0; j <= N; ++j)
      dnode[j] = 0.5 * d.w[j] * (d.xi2[j] - 1.0 / (phi[j] * phi[j]));
    std::vector<double> grad(N + 1);
    grad[0] = std::accumulate(dnode.begin(), dnode.end(), 0.0);
    double prefix = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      prefix += dnode[i - 1];
      grad[i] = d.h[i - 1] * prefix;
    }
    return grad;
  }

  void project(std::vector<double>& u) const {
    u[0] = std::max(u[0], floor);
    std::vector<double> g(u.begin() + 1, u.end());
    pava_nondecreasing(g);
    for (std::size_t i = 0; i < g.size(); ++i) u[1 + i] = std::max(g[i], 0.0);
  }
};

}  // namespace

OracleSolution minimize_cs(const Mixture& mix, const OracleOptions& opts) {
  const int N = std::max(opts.N, 256);
  const Discretization d = make_grid(mix, N);
  const Problem prob{d, opts.floor};

  // Feasible start: the replica-symmetric tail, constant at xi'(1)^{-1/2}.
  std::vector<double> u(static_cast<std::size_t>(N) + 1, 0.0);
  u[0] = 1.0 / std::sqrt(mix.xi1(1.0));
  prob.project(u);

  // FISTA with backtracking and objective restart.
  std::vector<double> y = u, u_prev = u;
  double theta = 1.0;
  double lip = 1.0;
  double fu = prob.objective(u);
  double kkt = INFINITY;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    const std::vector<double> grad = prob.gradient(y);
    const double fy = prob.objective(y);
    std::vector<double> u_next;
    while (true) {
      u_next = y;
      for (std::size_t i = 0; i < u_next.size(); ++i) u_next[i] -= grad[i] / lip;
      prob.project(u_next);
      double quad = fy, dist2 = 0.0;
      for (std::size_t i = 0; i < u_next.size(); ++i) {
        const double s = u_next[i] - y[i];
        quad += grad[i] * s;
        dist2 += s * s;
      }
      quad += 0.5 * lip * dist2;
      const double fn = prob.objective(u_next);
      if (fn <= quad + 1e-15 * std::abs(quad)) {
        fu = fn;
        break;
      }
      lip *= 2.0;
      if (lip > 1e18) break;
    }

    // KKT residual: the fixed-point gap of a unit-step projected gradient.
    const std::vector<double> gu = prob.gradient(u_next);
    std::vector<double> probe = u_next;
    for (std::size_t i = 0; i < probe.size(); ++i) probe[i] -= gu[i];
    prob.project(probe);
    kkt = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i)
      kkt = std::max(kkt, std::abs(probe[i] - u_next[i]));
    if (kkt <= opts.tol) {
      u = u_next;
      ++iter;
      break;
    }

    const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    const double beta = (theta - 1.0) / theta_next;
    y = u_next;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += beta * (u_next[i] - u_prev[i]);
    // Restart momentum when it stops helping.
    if (prob.objective(y) > fu) {
      y = u_next;
      theta = 1.0;
    } else {
      theta = theta_next;
    }
    u_prev = u;
    u = u_next;
    lip *= 0.95;
  }

  OracleSolution sol;
  sol.grid = d.x;
  sol.phi = prob.phi_of(u);
  sol.energy = prob.objective(u);
  sol.delta = u[0];
  sol.iterations = iter;
  sol.kkt_residual = kkt;
  sol.converged = kkt <= opts.tol;
  return sol;
}

Result<ExtractedPhase> extract_phase(const Mixture& mix, const OracleSolution& sol,
                                     const ExtractOptions& opts) {
  using R = Result<ExtractedPhase>;
  const std::size_t N = sol.grid.size() - 1;
  if (N < 8) return R::failure("grid too coarse to classify");

  // Interval labels: a segment cell must track the smooth profile in value
  // (phi close to xi''^{-1/2}) and in slope (gamma close to omega). Either
  // test alone misfires: an affine piece crosses the value curve over a band,
  // and is tangent to the slope curve over another band, but only a genuine
  // segment passes both at once.
  std::vector<double> gamma(N);
  std::vector<char> is_seg(N, 0);
  for (std::size_t i = 0; i < N; ++i) {
    gamma[i] = (sol.phi[i] - sol.phi[i + 1]) / (sol.grid[i + 1] - sol.grid[i]);
    const double mid = 0.5 * (sol.grid[i] + sol.grid[i + 1]);
    const double xi2 = mix.xi2(mid);
    if (xi2 <= 0.0) continue;
    const double om = 0.5 * std::pow(xi2, -1.5) * mix.xi3(mid);
    if (!(om > 0.0) || std::abs(gamma[i] / om - 1.0) > opts.tol_seg) continue;
    bool value_ok = true;
    for (std::size_t j = i; j <= i + 1; ++j) {
      const double v = mix.xi2(sol.grid[j]);
      if (v <= 0.0 || std::abs(sol.phi[j] - 1.0 / std::sqrt(v)) > opts.tol_val) value_ok = false;
    }
    if (value_ok) is_seg[i] = 1;
  }
  // Drop segment runs shorter than min_run intervals.
  for (std::size_t i = 0; i < N;) {
    if (!is_seg[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < N && is_seg[j]) ++j;
    if (j - i < static_cast<std::size_t>(opts.min_run))
      for (std::size_t r = i; r < j; ++r) is_seg[r] = 0;
    i = j;
  }

  const double gamma_max = *std::max_element(gamma.begin(), gamma.end());
  ExtractedPhase out;
  if (gamma_max <= opts.tol_jump) {
    out.label.kind = PhaseKind::RS;
    return R::success(std::move(out));
  }

  // Walk the intervals: alternate block regions (piecewise-constant gamma,
  // levels split at jump clusters) and segment regions.
  bool any_segment = false;
  for (std::size_t i = 0; i < N;) {
    std::size_t j = i;
    while (j < N && is_seg[j] == is_seg[i]) ++j;
    if (is_seg[i]) {
      any_segment = true;
      out.segments.emplace_back(sol.grid[i], sol.grid[j]);
      if (j == N) out.label.composition.push_back(0);  // trailing segment to 1
    } else {
      // Jump positions inside the block region, clusters merged; cells within
      // min_run of the region edges are skipped (discretization artifacts).
      std::vector<std::size_t> jumps;
      const std::size_t margin = static_cast<std::size_t>(opts.min_run);
      for (std::size_t r = i + 1 + margin; r + margin < j; ++r)
        if (gamma[r] - gamma[r - 1] > opts.tol_jump) {
          if (!jumps.empty() && r - jumps.back() < static_cast<std::size_t>(opts.min_run))
            jumps.back() = r;
          else
            jumps.push_back(r);
        }
      for (std::size_t r : jumps) out.breakpoints.push_back(sol.grid[r]);
      out.label.composition.push_back(static_cast<int>(jumps.size()) + 1);
    }
    i = j;
  }

  int k = 0;
  for (int s : out.label.composition) k += s;
  out.label.k = k;
  if (any_segment) {
    out.label.kind = PhaseKind::FRSB;
    out.label.f_set = f_set_of_composition(out.label.composition);
  } else {
    out.label.kind = PhaseKind::RSB;
    out.label.composition.clear();
  }
  return R::success(std::move(out));
}

}  // namespace pspin
