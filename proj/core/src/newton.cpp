#include "newton.hpp"

#include <algorithm>
#include <cmath>

namespace pspin::detail {

double sup_norm(const std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) {
    if (std::isnan(x)) return INFINITY;
    n = std::max(n, std::abs(x));
  }
  return n;
}

bool solve_linear(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * b[c];
    b[i] = s / a[i][i];
  }
  return true;
}

bool newton(const ResidualFn& f, std::vector<double>& x, const NewtonOptions& opts) {
  const std::size_t n = x.size();
  std::vector<double> res = f(x);
  double norm = sup_norm(res);
  if (!std::isfinite(norm)) return false;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if (norm <= opts.tol) return true;
    std::vector<std::vector<double>> jac(res.size(), std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> xp = x, xm = x;
      xp[j] += opts.fd_step;
      xm[j] -= opts.fd_step;
      const std::vector<double> rp = f(xp), rm = f(xm);
      for (std::size_t i = 0; i < res.size(); ++i)
        jac[i][j] = (rp[i] - rm[i]) / (2.0 * opts.fd_step);
    }
    std::vector<double> step = res;
    if (jac.size() != n || !solve_linear(jac, step)) return false;
    double scale = 1.0;
    bool improved = false;
    for (int half = 0; half <= opts.max_halvings; ++half) {
      std::vector<double> trial = x;
      for (std::size_t j = 0; j < n; ++j) trial[j] -= scale * step[j];
      const std::vector<double> rt = f(trial);
      const double nt = sup_norm(rt);
      if (std::isfinite(nt) && nt < norm) {
        x = trial;
        res = rt;
        norm = nt;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) return norm <= opts.tol;
  }
  return norm <= opts.tol;
}

std::vector<std::vector<double>> multistart_increasing_roots(const ResidualFn& residual, int dims,
                                                             const std::vector<double>& candidates,
                                                             const NewtonOptions& opts) {
  const int ncand = static_cast<int>(candidates.size());
  std::vector<std::vector<double>> seeds;

  if (dims == 1) {
    double prev_v = NAN, prev_x = NAN;
    for (int i = 0; i < ncand; ++i) {
      const double x = candidates[i];
      const double v = residual({x})[0];
      if (std::isfinite(v) && std::abs(v) < 9.0) {
        if (std::isfinite(prev_v) && ((v > 0) != (prev_v > 0))) {
          double a = prev_x, b = x, fa = prev_v;
          for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (a + b);
            const double fm = residual({mid})[0];
            if (!std::isfinite(fm)) break;
            if ((fm > 0) == (fa > 0)) {
              a = mid;
              fa = fm;
            } else {
              b = mid;
            }
          }
          seeds.push_back({0.5 * (a + b)});
        }
        prev_v = v;
        prev_x = x;
      }
    }
  } else {
    struct Seed {
      double norm;
      std::vector<double> u;
    };
    const int nstrata = 24;
    const std::size_t per_stratum = 8;
    std::vector<std::vector<Seed>> strata(nstrata);
    std::vector<int> idx(dims);
    for (int i = 0; i < dims; ++i) idx[i] = i;
    std::vector<double> u(dims);
    while (true) {
      for (int i = 0; i < dims; ++i) u[i] = candidates[idx[i]];
      const double norm = sup_norm(residual(u));
      if (std::isfinite(norm) && norm < 9.0) {
        auto& bucket = strata[idx[0] * nstrata / ncand];
        bucket.push_back({norm, u});
        std::sort(bucket.begin(), bucket.end(), [](const Seed& a, const Seed& b) {
          if (a.norm != b.norm) return a.norm < b.norm;
          return a.u < b.u;
        });
        if (bucket.size() > per_stratum) bucket.resize(per_stratum);
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
    for (const auto& bucket : strata)
      for (const Seed& seed : bucket) seeds.push_back(seed.u);
  }

  std::vector<std::vector<double>> roots;
  for (const std::vector<double>& seed : seeds) {
    std::vector<double> x = seed;
    if (!newton(residual, x, opts)) continue;
    bool increasing = true;
    for (int i = 1; i < dims; ++i)
      if (!(x[i] > x[i - 1])) increasing = false;
    if (!increasing) continue;
    bool dup = false;
    for (const std::vector<double>& r : roots) {
      double d = 0.0;
      for (int i = 0; i < dims; ++i) d = std::max(d, std::abs(r[i] - x[i]));
      if (d < 1e-7) dup = true;
    }
    if (!dup) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace pspin::detail
