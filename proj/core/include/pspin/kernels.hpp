#pragma once

#include <vector>

#include "pspin/mixture.hpp"

namespace pspin {

// Ordered tuple (x_0, ..., x_s) in [0,1]^{s+1}.
struct Chain {
  std::vector<double> x;

  Chain() = default;
  Chain(std::initializer_list<double> v) : x(v) {}
  explicit Chain(std::vector<double> v) : x(std::move(v)) {}

  int s() const { return static_cast<int>(x.size()) - 1; }
  double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return x[static_cast<std::size_t>(i)]; }
  double front() const { return x.front(); }
  double back() const { return x.back(); }
  bool strictly_increasing(double min_gap = 0.0) const;
};

// Parity indicator: 1 if i odd, 0 if i even.
inline int iota_parity(long i) { return static_cast<int>(i & 1); }

enum class ZLimit { Zero, One, Infinity };

// h(x,y,z) = xi(y)-xi(x)-xi'(x)(y-x) + [xi'(y)-xi'(x)](y-x) * B(z),
// B(z) = 1/(z-1) - z log z/(z-1)^2; series about z=1 for |z-1| < 1e-4;
// limits B(0+)=-1, B(1)=-1/2, B(inf)=0. Strictly increasing in z for x<y.
double h(const Mixture& m, double x, double y, double z);
double h(const Mixture& m, double x, double y, ZLimit limit);
// Accepts z == 0 and z == +infinity, dispatching to the limit forms.
double h_ext(const Mixture& m, double x, double y, double z);

// The z-bracket B(z) alone (exposed for tests of the series handoff).
double h_bracket(double z);

// r1(x,y,z) = [xi'(z)-xi'(y)](z-x) / ((z-y)[xi'(z)-xi'(x)]); r1 -> r2(x,y) as z->y.
double r1(const Mixture& m, double x, double y, double z);
// r2(x,y) = xi''(y)(y-x)/[xi'(y)-xi'(x)]; r2 -> 1 as y->x (when xi''(x)>0).
double r2(const Mixture& m, double x, double y);

// h^F(x,y) = h(x, y, r2(x,y)), with the z->0+ limit when r2(x,y)=0.
double hF(const Mixture& m, double x, double y);

// r_l of a chain: r1(x_{l-1}, x_{l+1}, x_l), for 1 <= l <= s-1.
double chain_r(const Mixture& m, const Chain& c, int l);

// Chain functionals F_l (0<=l<=s), A_l (1<=l<=s-1), and the maxima Z, Y.
struct KernelProfile {
  std::vector<double> F;
  std::vector<double> A;  // A[l] valid for 1..s-1; A[0], A[s] are NaN placeholders
  double Z = 0.0;
  double Y = 0.0;
  // Which element attains each maximum (for diagnostics/reporting).
  int z_arg = -1;
  bool z_from_A = false;
  int y_arg = -1;
  bool y_from_A = false;
};
KernelProfile chain_profile(const Mixture& m, const Chain& c);

// F_l^s of a chain, evaluated directly (used by block systems without a full profile).
double chain_F(const Mixture& m, const Chain& c, int l);
// A_l^s of a chain, 1 <= l <= s-1.
double chain_A(const Mixture& m, const Chain& c, int l);

// Boundary functions on 0 < x1 < x2 < 1. The interior variants use the
// r-products of the chain (0, x1, x2, 1); the interpretation is the one that
// reproduces the published phase-window sign tables.
enum class HBar { h1L, h1U, h2L, h2U, h3L, h3U };
// h1L(x1)      = h(0,  x1, r2(0,x1))                     [x2 ignored]
// h1U(x1,x2)   = h(0,  x1, r1(0,x2,x1)/r2(x1,x2))
// h2L(x1,x2)   = h(x1, x2, 1/r2(x2,x1))
// h2U(x1,x2)   = h(x1, x2, r2(x1,x2))  ( = hF(x1,x2) )
// h3L(x1,x2)   = h(x2, 1,  r2(x2,x1)*r1(x1,1,x2))
// h3U(x2)      = h(x2, 1,  1/r2(1,x2))                   [x1 ignored]
double hbar(const Mixture& m, HBar which, double x1, double x2);

}  // namespace pspin
