#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pspin/errors.hpp"

namespace pspin {

// Mixture function xi(x) = sum_j lambda_j x^{p_j} with strictly increasing
// integer exponents (p >= 3 in the supported regime, p = 2 admitted only via
// the diagnostic factory) and nonnegative weights summing to one.
class Mixture {
 public:
  // Empty placeholder (no components); only the validated factories below
  // produce usable mixtures.
  Mixture() = default;

  static Mixture make(std::vector<int> exponents, std::vector<double> weights,
                      bool derive_last = false);
  // Same validation except exponents >= 2 are admitted (pure 2-spin sanity case).
  static Mixture make_diagnostic(std::vector<int> exponents, std::vector<double> weights,
                                 bool derive_last = false);

  const std::vector<int>& exponents() const { return p_; }
  const std::vector<double>& weights() const { return lambda_; }
  std::size_t components() const { return p_.size(); }

  // d^order/dx^order xi(x) for order in 0..4, exact polynomial derivative.
  double deriv(double x, int order) const;
  double xi(double x) const { return deriv(x, 0); }
  double xi1(double x) const { return deriv(x, 1); }
  double xi2(double x) const { return deriv(x, 2); }
  double xi3(double x) const { return deriv(x, 3); }
  double xi4(double x) const { return deriv(x, 4); }

  // d^2/dx^2 { xi''(x)^{-1/2} } = (1/4) xi''(x)^{-5/2} (3 xi'''(x)^2 - 2 xi''(x) xi''''(x)).
  double phi_star_curvature(double x) const;

  // Strict sign changes of phi_star_curvature on (0,1), counted on a uniform
  // grid; bounded by 2(n-1).
  int curvature_sign_changes(int grid = 100000) const;

 private:
  Mixture(std::vector<int> p, std::vector<double> lambda)
      : p_(std::move(p)), lambda_(std::move(lambda)) {}
  static Mixture validated(std::vector<int> exponents, std::vector<double> weights,
                           bool derive_last, int min_exponent);

  std::vector<int> p_;
  std::vector<double> lambda_;
};

}  // namespace pspin
