#include "pspin/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pspin/errors.hpp"
#include "pspin/quadrature.hpp"

namespace pspin {

namespace {

struct Piece {
  bool is_segment = false;
  double a = 0.0, b = 0.0, m = 0.0;  // m meaningful for blocks only
};

std::vector<Piece> ordered_pieces(const ParisiMeasure& nu) {
  std::vector<Piece> ps;
  ps.reserve(nu.blocks.size() + nu.segments.size());
  for (const MeasureBlock& blk : nu.blocks) ps.push_back({false, blk.a, blk.b, blk.m});
  for (const MeasureSegment& seg : nu.segments) ps.push_back({true, seg.a, seg.b, 0.0});
  std::sort(ps.begin(), ps.end(), [](const Piece& p, const Piece& q) { return p.a < q.a; });
  return ps;
}

// gamma value at the left and right edges of a piece.
double gamma_left(const Mixture& m, const Piece& p) {
  return p.is_segment ? omega_density(m, p.a) : p.m;
}
double gamma_right(const Mixture& m, const Piece& p) {
  return p.is_segment ? omega_density(m, p.b) : p.m;
}

// int_x^b gamma over the tail of one piece (x within [a,b]).
double piece_tail_mass(const Mixture& m, const Piece& p, double x) {
  if (p.is_segment)
    return 1.0 / std::sqrt(m.xi2(x)) - 1.0 / std::sqrt(m.xi2(p.b));
  return p.m * (p.b - x);
}

// int_x^y dr / tail(r)^2 within one piece, where tail(y) = tail_y.
double piece_c_increment(const Mixture& m, const Piece& p, double x, double y, double tail_y) {
  if (y <= x) return 0.0;
  if (!p.is_segment) {
    const double tail_x = tail_y + p.m * (y - x);
    if (p.m == 0.0) return (y - x) / (tail_y * tail_y);
    return (1.0 / tail_y - 1.0 / tail_x) / p.m;
  }
  // kappa is the deviation of the tail from xi''^{-1/2}; zero for measures the
  // solver assembles, nonzero for perturbed inputs (handled by quadrature).
  const double kappa = tail_y - 1.0 / std::sqrt(m.xi2(y));
  if (std::abs(kappa) <= 1e-13 * tail_y) return m.xi1(y) - m.xi1(x);
  auto f = [&](double r) {
    const double t = 1.0 / std::sqrt(m.xi2(r)) + kappa;
    return 1.0 / (t * t);
  };
  return integrate_adaptive(f, x, y);
}

// int_x^y (y - r) / tail(r)^2 dr within one piece (used to integrate C itself:
// int_x^y C(t) dt = C(x)(y-x) + this value).
double piece_c_weighted(const Mixture& m, const Piece& p, double x, double y, double tail_y) {
  if (y <= x) return 0.0;
  if (!p.is_segment) {
    const double tail_x = tail_y + p.m * (y - x);
    if (p.m == 0.0) return 0.5 * (y - x) * (y - x) / (tail_y * tail_y);
    // int (y-r)/ (m(y-r)+c)^2 dr with c = tail_y: substitute u = m(y-r)+c.
    const double c = tail_y;
    return (std::log(tail_x / c) - (tail_x - c) / tail_x) / (p.m * p.m);
  }
  const double kappa = tail_y - 1.0 / std::sqrt(m.xi2(y));
  auto f = [&](double r) {
    const double t = 1.0 / std::sqrt(m.xi2(r)) + kappa;
    return (y - r) / (t * t);
  };
  if (std::abs(kappa) <= 1e-13 * tail_y) {
    // 1/tail^2 = xi'' exactly: int (y-r) xi''(r) dr = xi(y)-xi(x) - xi'(x)(y-x)
    // ... with the (y-r) weight it is y*(xi'(y)-xi'(x)) - (r xi'(r) - xi(r)) bounds.
    return y * (m.xi1(y) - m.xi1(x)) - (y * m.xi1(y) - m.xi(y)) + (x * m.xi1(x) - m.xi(x));
  }
  return integrate_adaptive(f, x, y);
}

// int_x^y gbar(t) dt within one piece, where C(x) = c_at_x and tail(y) = tail_y.
double piece_gbar_integral(const Mixture& m, const Piece& p, double x, double y, double c_at_x,
                           double tail_y) {
  if (y <= x) return 0.0;
  const double xi_part = m.xi(y) - m.xi(x);
  const double c_part = c_at_x * (y - x) + piece_c_weighted(m, p, x, y, tail_y);
  return xi_part - c_part;
}

struct Profile {
  std::vector<Piece> pieces;
  std::vector<double> tail_at_b;  // tail at the right end of each piece
  std::vector<double> c_at_a;     // C at the left end of each piece
  std::vector<double> g_at_b;     // g at the right end of each piece (g(1) = 0)
  double c_total = 0.0;           // C(1)
};

Profile build_profile(const ParisiMeasure& nu) {
  Profile pr;
  pr.pieces = ordered_pieces(nu);
  const Mixture& m = nu.mixture;
  const std::size_t n = pr.pieces.size();
  pr.tail_at_b.resize(n);
  pr.c_at_a.resize(n);
  pr.g_at_b.resize(n);
  double tail = nu.delta;
  for (std::size_t i = n; i-- > 0;) {
    pr.tail_at_b[i] = tail;
    tail += piece_tail_mass(m, pr.pieces[i], pr.pieces[i].a);
  }
  double c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pr.c_at_a[i] = c;
    c += piece_c_increment(m, pr.pieces[i], pr.pieces[i].a, pr.pieces[i].b, pr.tail_at_b[i]);
  }
  pr.c_total = c;
  double g = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    pr.g_at_b[i] = g;
    g += piece_gbar_integral(m, pr.pieces[i], pr.pieces[i].a, pr.pieces[i].b, pr.c_at_a[i],
                             pr.tail_at_b[i]);
  }
  return pr;
}

std::size_t piece_index(const Profile& pr, double u) {
  std::size_t lo = 0, hi = pr.pieces.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (u < pr.pieces[mid].a)
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

// g(u) = g at the right end of u's piece + int_u^{b} gbar, via the profile.
double g_at(const Profile& pr, const Mixture& m, double u) {
  if (u >= 1.0) return 0.0;
  const std::size_t i = piece_index(pr, u);
  const Piece& p = pr.pieces[i];
  const double x = std::max(u, p.a);
  const double c_at_x =
      pr.c_at_a[i] + piece_c_increment(m, p, p.a, x, pr.tail_at_b[i] + piece_tail_mass(m, p, x));
  return pr.g_at_b[i] + piece_gbar_integral(m, p, x, p.b, c_at_x, pr.tail_at_b[i]);
}

double c_at(const Profile& pr, const Mixture& m, double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return pr.c_total;
  const std::size_t i = piece_index(pr, u);
  const Piece& p = pr.pieces[i];
  const double tail_u = pr.tail_at_b[i] + piece_tail_mass(m, p, std::max(u, p.a));
  return pr.c_at_a[i] + piece_c_increment(m, p, p.a, std::max(u, p.a), tail_u);
}

}  // namespace

double omega_density(const Mixture& m, double x) {
  const double xi2 = m.xi2(x);
  if (xi2 <= 0.0) fail(Errc::SingularCurvature, "omega density at xi''(x) = 0");
  return 0.5 * std::pow(xi2, -1.5) * m.xi3(x);
}

void validate_measure(const ParisiMeasure& nu, double tol) {
  if (!(nu.delta > 0.0)) fail(Errc::InvalidMeasure, "delta must be positive");
  const std::vector<Piece> ps = ordered_pieces(nu);
  if (ps.empty()) fail(Errc::InvalidMeasure, "measure has no pieces");
  if (std::abs(ps.front().a) > tol) fail(Errc::InvalidMeasure, "pieces must start at 0");
  if (std::abs(ps.back().b - 1.0) > tol) fail(Errc::InvalidMeasure, "pieces must end at 1");
  double prev_b = ps.front().a;
  double prev_gamma = -std::numeric_limits<double>::infinity();
  for (const Piece& p : ps) {
    if (std::abs(p.a - prev_b) > tol) fail(Errc::InvalidMeasure, "pieces must abut");
    if (!(p.b > p.a)) fail(Errc::InvalidMeasure, "piece has nonpositive length");
    const double gl = gamma_left(nu.mixture, p);
    const double gr = gamma_right(nu.mixture, p);
    if (p.is_segment && gr < gl - tol)
      fail(Errc::InvalidMeasure, "segment density decreasing (positive curvature)");
    if (!p.is_segment && p.m < 0.0) fail(Errc::InvalidMeasure, "negative block density");
    if (gl < prev_gamma - tol) fail(Errc::InvalidMeasure, "gamma decreases across pieces");
    prev_gamma = gr;
    prev_b = p.b;
  }
}

ParisiMeasure rs_measure(const Mixture& m) {
  ParisiMeasure nu{m, {{0.0, 1.0, 0.0}}, {}, 1.0 / std::sqrt(m.xi1(1.0))};
  return nu;
}

double nu_tail(const ParisiMeasure& nu, double x) {
  if (x < 0.0 || x > 1.0) fail(Errc::DomainError, "nu_tail argument outside [0,1]");
  double tail = nu.delta;
  for (const MeasureBlock& blk : nu.blocks)
    if (x < blk.b) tail += blk.m * (blk.b - std::max(x, blk.a));
  for (const MeasureSegment& seg : nu.segments)
    if (x < seg.b)
      tail += 1.0 / std::sqrt(nu.mixture.xi2(std::max(x, seg.a))) -
              1.0 / std::sqrt(nu.mixture.xi2(seg.b));
  return tail;
}

double cs_energy(const ParisiMeasure& nu) {
  validate_measure(nu);
  const Mixture& m = nu.mixture;
  const Profile pr = build_profile(nu);
  // int xi' dnu = delta * xi'(1) + sum over pieces of int_a^b xi'(t) gamma(t) dt.
  double xi_int = nu.delta * m.xi1(1.0);
  // int dx / tail(x).
  double inv_int = 0.0;
  for (std::size_t i = 0; i < pr.pieces.size(); ++i) {
    const Piece& p = pr.pieces[i];
    const double tail_b = pr.tail_at_b[i];
    if (!p.is_segment) {
      xi_int += p.m * (m.xi(p.b) - m.xi(p.a));
      if (p.m == 0.0) {
        inv_int += (p.b - p.a) / tail_b;
      } else {
        inv_int += std::log1p(p.m * (p.b - p.a) / tail_b) / p.m;
      }
    } else {
      xi_int += integrate_adaptive([&](double t) { return m.xi1(t) * omega_density(m, t); },
                                   p.a, p.b);
      const double kappa = tail_b - 1.0 / std::sqrt(m.xi2(p.b));
      inv_int += integrate_adaptive(
          [&](double t) { return 1.0 / (1.0 / std::sqrt(m.xi2(t)) + kappa); }, p.a, p.b);
    }
  }
  return 0.5 * (xi_int + inv_int);
}

GbarG g_functions(const ParisiMeasure& nu, double u) {
  if (u < 0.0 || u > 1.0) fail(Errc::DomainError, "g_functions argument outside [0,1]");
  validate_measure(nu);
  const Profile pr = build_profile(nu);
  const Mixture& m = nu.mixture;
  GbarG out;
  out.gbar = m.xi1(u) - c_at(pr, m, u);
  out.g = g_at(pr, m, u);
  return out;
}

VerificationReport verify_parisi(const ParisiMeasure& nu, const VerifyOptions& opts) {
  validate_measure(nu);
  const Mixture& m = nu.mixture;
  const Profile pr = build_profile(nu);
  VerificationReport rep;
  rep.grid_size = opts.grid;
  rep.cond_i_residual = m.xi1(1.0) - pr.c_total;

  // Support of the measure induced by gamma: piece junctions with a strict
  // gamma increase (including 0 when gamma(0) > 0) plus all segment interiors.
  std::vector<double> support;
  double prev_gamma = 0.0;
  for (const Piece& p : pr.pieces) {
    if (gamma_left(m, p) > prev_gamma + 1e-12) support.push_back(p.a);
    if (p.is_segment) {
      const int sub = 64;
      for (int i = 0; i <= sub; ++i) support.push_back(p.a + (p.b - p.a) * i / sub);
    }
    prev_gamma = gamma_right(m, p);
  }

  std::vector<double> probes;
  probes.reserve(static_cast<std::size_t>(opts.grid) + 32 * support.size() + support.size());
  for (int i = 0; i <= opts.grid; ++i) probes.push_back(static_cast<double>(i) / opts.grid);
  for (double sp : support) {
    probes.push_back(sp);
    for (int i = 1; i <= 16; ++i) {
      const double d = 1e-3 * i / 16.0;
      if (sp - d > 0.0) probes.push_back(sp - d);
      if (sp + d < 1.0) probes.push_back(sp + d);
    }
  }
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  rep.min_g = std::numeric_limits<double>::infinity();
  rep.min_g_at = 0.0;
  for (double u : probes) {
    const double g = g_at(pr, m, u);
    if (g < rep.min_g) {
      rep.min_g = g;
      rep.min_g_at = u;
    }
  }
  rep.g_at_support = 0.0;
  for (double sp : support) rep.g_at_support = std::max(rep.g_at_support, std::abs(g_at(pr, m, sp)));

  rep.passed = std::abs(rep.cond_i_residual) <= opts.tol_i && rep.min_g >= -opts.tol_g &&
               rep.g_at_support <= opts.tol_s;
  return rep;
}

}  // namespace pspin
