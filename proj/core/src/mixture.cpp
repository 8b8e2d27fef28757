#include "pspin/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pspin {

Mixture Mixture::validated(std::vector<int> exponents, std::vector<double> weights,
                           bool derive_last, int min_exponent) {
  if (exponents.empty()) fail(Errc::NonIncreasingExponents, "empty exponent list");
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < min_exponent) {
      std::ostringstream os;
      os << "exponent " << exponents[i] << " below minimum " << min_exponent;
      fail(Errc::NonIncreasingExponents, os.str());
    }
    if (i > 0 && exponents[i] <= exponents[i - 1])
      fail(Errc::NonIncreasingExponents, "exponents must be strictly increasing");
  }
  const std::size_t n = exponents.size();
  if (derive_last) {
    if (weights.size() != n - 1)
      fail(Errc::WeightSumMismatch, "derive_last expects n-1 weights");
    double sum = 0.0;
    for (double w : weights) sum += w;
    weights.push_back(1.0 - sum);
  }
  if (weights.size() != n) fail(Errc::WeightSumMismatch, "weight count does not match exponents");
  double sum = 0.0;
  for (double w : weights) {
    if (w < -1e-12 || w > 1.0 + 1e-12) {
      std::ostringstream os;
      os << "weight " << w << " outside [0,1]";
      fail(Errc::WeightOutOfRange, os.str());
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "weights sum to " << sum << ", expected 1";
    fail(Errc::WeightSumMismatch, os.str());
  }
  for (double& w : weights) w = std::clamp(w, 0.0, 1.0);
  return Mixture(std::move(exponents), std::move(weights));
}

Mixture Mixture::make(std::vector<int> exponents, std::vector<double> weights, bool derive_last) {
  return validated(std::move(exponents), std::move(weights), derive_last, 3);
}

Mixture Mixture::make_diagnostic(std::vector<int> exponents, std::vector<double> weights,
                                 bool derive_last) {
  return validated(std::move(exponents), std::move(weights), derive_last, 2);
}

double Mixture::deriv(double x, int order) const {
  if (x < -1e-15 || x > 1.0 + 1e-15) fail(Errc::DomainError, "x outside [0,1]");
  if (order < 0 || order > 4) fail(Errc::DomainError, "derivative order outside 0..4");
  x = std::clamp(x, 0.0, 1.0);
  // Neumaier-compensated sum in ascending exponent order (p_ is ascending).
  double sum = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < p_.size(); ++j) {
    const int p = p_[j];
    if (p < order) continue;
    double factor = lambda_[j];
    for (int i = 0; i < order; ++i) factor *= static_cast<double>(p - i);
    const double term = factor * std::pow(x, static_cast<double>(p - order));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double Mixture::phi_star_curvature(double x) const {
  const double d2 = deriv(x, 2);
  if (d2 <= 0.0) fail(Errc::SingularCurvature, "xi''(x) = 0, curvature undefined");
  const double d3 = deriv(x, 3);
  const double d4 = deriv(x, 4);
  return 0.25 * std::pow(d2, -2.5) * (3.0 * d3 * d3 - 2.0 * d2 * d4);
}

int Mixture::curvature_sign_changes(int grid) const {
  int changes = 0;
  int last_sign = 0;
  for (int i = 1; i < grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    double v;
    try {
      v = phi_star_curvature(x);
    } catch (const Error&) {
      continue;
    }
    const int sign = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

}  // namespace pspin
