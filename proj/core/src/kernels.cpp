#include "pspin/kernels.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pspin {

namespace {

constexpr double kSeriesWindow = 1e-4;

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << name << " = " << v << " outside [0,1]";
    fail(Errc::DomainError, os.str());
  }
}

}  // namespace

bool Chain::strictly_increasing(double min_gap) const {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] - x[i - 1] > min_gap)) return false;
  return true;
}

double h_bracket(double z) {
  if (z == 0.0) return -1.0;
  if (std::isinf(z)) return 0.0;
  const double w = z - 1.0;
  if (std::abs(w) < kSeriesWindow) {
    // 1/(z-1) - z log z/(z-1)^2 = sum_{k>=0} (-1)^{k+1} w^k / ((k+1)(k+2))
    return -0.5 + w * (1.0 / 6.0 + w * (-1.0 / 12.0 + w * (1.0 / 20.0 + w * (-1.0 / 30.0))));
  }
  return 1.0 / w - z * std::log(z) / (w * w);
}

static double h_impl(const Mixture& m, double x, double y, double bracket) {
  check_unit_interval(x, "x");
  check_unit_interval(y, "y");
  const double dy = y - x;
  const double base = m.xi(y) - m.xi(x) - m.xi1(x) * dy;
  if (bracket == -1.0) {
    // z -> 0+ form written directly to avoid cancellation of the two big terms.
    return m.xi(y) - m.xi(x) - m.xi1(y) * dy;
  }
  return base + (m.xi1(y) - m.xi1(x)) * dy * bracket;
}

double h(const Mixture& m, double x, double y, double z) {
  if (!(z > 0.0) || std::isinf(z) || std::isnan(z))
    fail(Errc::NonpositiveZ, "h requires z > 0 finite (use a limit tag)");
  return h_impl(m, x, y, h_bracket(z));
}

double h(const Mixture& m, double x, double y, ZLimit limit) {
  switch (limit) {
    case ZLimit::Zero:
      return h_impl(m, x, y, -1.0);
    case ZLimit::One:
      return h_impl(m, x, y, -0.5);
    case ZLimit::Infinity:
      return h_impl(m, x, y, 0.0);
  }
  fail(Errc::DomainError, "bad limit tag");
}

double h_ext(const Mixture& m, double x, double y, double z) {
  if (std::isnan(z) || z < 0.0) fail(Errc::NonpositiveZ, "h requires z >= 0");
  if (z == 0.0) return h(m, x, y, ZLimit::Zero);
  if (std::isinf(z)) return h(m, x, y, ZLimit::Infinity);
  return h_impl(m, x, y, h_bracket(z));
}

double r2(const Mixture& m, double x, double y) {
  check_unit_interval(x, "x");
  check_unit_interval(y, "y");
  if (x == y) {
    if (m.xi2(x) > 0.0) return 1.0;
    fail(Errc::DegenerateArguments, "r2 at coincident arguments with xi''=0");
  }
  return m.xi2(y) * (y - x) / (m.xi1(y) - m.xi1(x));
}

double r1(const Mixture& m, double x, double y, double z) {
  check_unit_interval(x, "x");
  check_unit_interval(y, "y");
  check_unit_interval(z, "z");
  if (z == y) return r2(m, x, y);
  if (x == y && y == z) fail(Errc::DegenerateArguments, "r1 at fully coincident arguments");
  const double num = (m.xi1(z) - m.xi1(y)) * (z - x);
  const double den = (z - y) * (m.xi1(z) - m.xi1(x));
  if (den == 0.0) fail(Errc::DegenerateArguments, "r1 denominator vanishes");
  return num / den;
}

double hF(const Mixture& m, double x, double y) {
  const double z = r2(m, x, y);
  return h_ext(m, x, y, z);
}

double chain_r(const Mixture& m, const Chain& c, int l) {
  return r1(m, c[l - 1], c[l + 1], c[l]);
}

double chain_F(const Mixture& m, const Chain& c, int l) {
  const int s = c.s();
  const double dq = c[s] - c[s - 1];
  const double dxi = m.xi1(c[s]) - m.xi1(c[s - 1]);
  double value = m.xi2(c[l]) * dq / dxi;
  const int u = (s - l) / 2 - 1;
  for (int i = 0; i <= u; ++i) {
    const double r = chain_r(m, c, l + 1 + 2 * i);
    value *= r * r;
  }
  return value;
}

double chain_A(const Mixture& m, const Chain& c, int l) {
  const int s = c.s();
  const int par = iota_parity(s - l);  // 1 if s-l odd
  double value = par ? r1(m, c[l], c[l + 1], c[l - 1]) : r1(m, c[l], c[l - 1], c[l + 1]);
  const int top = (s - l) / 2;
  for (int i = 1; i <= top; ++i) {
    const double ratio = chain_r(m, c, s - 2 * i) / chain_r(m, c, s + 1 - 2 * i);
    value *= par ? 1.0 / ratio : ratio;
  }
  return value;
}

KernelProfile chain_profile(const Mixture& m, const Chain& c) {
  const int s = c.s();
  if (s < 1) fail(Errc::DomainError, "chain needs s >= 1");
  if (!c.strictly_increasing()) fail(Errc::ChainNotStrict, "chain is not strictly increasing");
  KernelProfile prof;
  prof.F.resize(s + 1);
  prof.A.assign(s + 1, std::numeric_limits<double>::quiet_NaN());
  for (int l = 0; l <= s; ++l) prof.F[l] = chain_F(m, c, l);
  for (int l = 1; l <= s - 1; ++l) prof.A[l] = chain_A(m, c, l);

  prof.Z = -std::numeric_limits<double>::infinity();
  prof.Y = -std::numeric_limits<double>::infinity();
  for (int l = 0; l <= s; ++l) {
    const bool odd = iota_parity(s - l) == 1;
    if (odd) {
      if (prof.F[l] > prof.Z) {
        prof.Z = prof.F[l];
        prof.z_arg = l;
        prof.z_from_A = false;
      }
    } else {
      if (prof.F[l] > prof.Y) {
        prof.Y = prof.F[l];
        prof.y_arg = l;
        prof.y_from_A = false;
      }
    }
  }
  for (int l = 1; l <= s - 1; ++l) {
    const bool odd = iota_parity(s - l) == 1;
    if (!odd) {
      if (prof.A[l] > prof.Z) {
        prof.Z = prof.A[l];
        prof.z_arg = l;
        prof.z_from_A = true;
      }
    } else {
      if (prof.A[l] > prof.Y) {
        prof.Y = prof.A[l];
        prof.y_arg = l;
        prof.y_from_A = true;
      }
    }
  }
  return prof;
}

double hbar(const Mixture& m, HBar which, double x1, double x2) {
  switch (which) {
    case HBar::h1L:
      return h_ext(m, 0.0, x1, r2(m, 0.0, x1));
    case HBar::h3U:
      return h_ext(m, x2, 1.0, 1.0 / r2(m, 1.0, x2));
    default:
      break;
  }
  if (!(x1 < x2)) fail(Errc::ArgumentOrder, "hbar requires x1 < x2");
  switch (which) {
    case HBar::h1U:
      return h_ext(m, 0.0, x1, r1(m, 0.0, x2, x1) / r2(m, x1, x2));
    case HBar::h2L:
      return h_ext(m, x1, x2, 1.0 / r2(m, x2, x1));
    case HBar::h2U:
      return h_ext(m, x1, x2, r2(m, x1, x2));
    case HBar::h3L:
      return h_ext(m, x2, 1.0, r2(m, x2, x1) * r1(m, x1, 1.0, x2));
    default:
      fail(Errc::DomainError, "bad hbar selector");
  }
}

}  // namespace pspin
