#pragma once

#include <vector>

#include "pspin/mixture.hpp"

namespace pspin {

// Element of the admissible class K: a density gamma on [0,1) plus an atom of
// mass delta at 1. gamma is piecewise: constant blocks (value m on [a,b)) and
// smooth full-RSB segments where gamma(x) = omega(x) = (1/2) xi''(x)^{-3/2} xi'''(x).
// Blocks and segments together tile [0,1) without gap or overlap, and gamma
// read left to right never decreases.
struct MeasureBlock {
  double a = 0.0;
  double b = 0.0;
  double m = 0.0;
};

struct MeasureSegment {
  double a = 0.0;
  double b = 0.0;
};

struct ParisiMeasure {
  Mixture mixture;
  std::vector<MeasureBlock> blocks;
  std::vector<MeasureSegment> segments;
  double delta = 0.0;
};

// The segment density omega(x) = (1/2) xi''(x)^{-3/2} xi'''(x), i.e. the
// density with int_x^b omega = xi''(x)^{-1/2} - xi''(b)^{-1/2}.
double omega_density(const Mixture& m, double x);

// Throws InvalidMeasure if the pieces do not tile [0,1), gamma is not
// nondecreasing (tolerance tol on values), or delta <= 0.
void validate_measure(const ParisiMeasure& nu, double tol = 1e-9);

// The replica-symmetric measure: gamma = 0, delta = xi'(1)^{-1/2}.
ParisiMeasure rs_measure(const Mixture& m);

// nu((x,1]) = delta + int_x^1 gamma(t) dt; closed form per piece.
double nu_tail(const ParisiMeasure& nu, double x);

// Crisanti-Sommers energy Q(nu) = (1/2)(int_0^1 xi' dnu + int_0^1 dx/nu((x,1])).
double cs_energy(const ParisiMeasure& nu);

// gbar(u) = xi'(u) - int_0^u dr/nu((r,1])^2 and g(u) = int_u^1 gbar(t) dt.
// Optimality of nu reads: g >= 0 everywhere and g = 0 on the support of the
// measure induced by gamma.
struct GbarG {
  double gbar = 0.0;
  double g = 0.0;
};
GbarG g_functions(const ParisiMeasure& nu, double u);

struct VerifyOptions {
  int grid = 4096;
  double tol_i = 1e-8;  // normalization residual xi'(1) - int dr/tail^2
  double tol_g = 1e-8;  // allowed negativity of g on the grid
  double tol_s = 1e-8;  // allowed |g| on the support
};

struct VerificationReport {
  double cond_i_residual = 0.0;
  double min_g = 0.0;
  double min_g_at = 0.0;
  double g_at_support = 0.0;  // max |g| over support probes
  bool passed = false;
  int grid_size = 0;
};

VerificationReport verify_parisi(const ParisiMeasure& nu, const VerifyOptions& opts = {});

}  // namespace pspin
