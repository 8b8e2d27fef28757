#pragma once

#include <functional>
#include <vector>

namespace pspin {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights, cached per order.
const GaussRule& gauss_legendre(int order);

// Fixed-order Gauss-Legendre integral of f over [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int order = 64);

// Order-doubling until two successive estimates agree to `tol` (absolute+relative).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12, int initial_order = 64);

}  // namespace pspin
