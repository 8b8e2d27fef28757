#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pspin/kernels.hpp"

namespace pspin {

struct HsetOptions {
  double tol = 1e-10;          // membership tolerance on margins
  double newton_tol = 1e-12;   // residual tolerance for boundary activation roots
  int grid = 400;              // points per free coordinate in coarse scans
  double min_gap = 1e-7;       // degeneracy guard between consecutive coordinates
  double empty_resolution = 1e-3;  // grid certificate resolution for emptiness
};

// Condition kappa(s): chain strictly increasing and, for l = 1..s,
//   (-1)^{s-l} h(x_{l-1}, x_l, Z^{(-1)^{s-l+1}} F_l^{-1} r2(x_{l-1},x_l)) >= 0
//   (-1)^{s-l} h(x_{l-1}, x_l, Y^{(-1)^{s-l}}   F_l^{-1} r2(x_{l-1},x_l)) <= 0
// Margins are sign-adjusted so that nonnegative means satisfied.
struct KappaReport {
  Chain chain;
  bool satisfied = false;
  bool strict = false;
  std::vector<double> margin_z;  // index l-1, l = 1..s
  std::vector<double> margin_y;
  // Natural h-scale per interval, (x_l - x_{l-1}) * (xi'(x_l) - xi'(x_{l-1}));
  // margins divided by it are scale-invariant, which matters for nearly
  // clustered chains where every raw h-value is tiny.
  std::vector<double> scale;
  KernelProfile profile;
  std::string reason;

  double min_margin() const;
  double min_margin_rel() const;
  bool satisfied_rel(double tol) const;
};
KappaReport condition_kappa(const Mixture& m, const Chain& c, double tol = 1e-10);

enum class PinMode { First, Last, Both, None };
enum class Objective { MaxLast, MinFirst };

// Extremal point of H^s under the endpoint pin, located by activating the
// boundary equalities of condition kappa and polishing with damped Newton.
// PinMode::Both ignores the objective and returns any interior witness
// (0, x_1, ..., x_{s-1}, 1) in H^s, i.e. the nonemptiness certificate.
// PinMode::None returns the corner chain whose first coordinate is the
// min-first and whose last coordinate is the max-last of the un-pinned set.
std::optional<Chain> extremal_point(const Mixture& m, int s, PinMode pin, Objective objective,
                                    const HsetOptions& opts = {});

// Nonemptiness of {x in H^s : x_0 = 0, x_s = 1} by grid scan + local refinement.
std::optional<Chain> pinned_witness(const Mixture& m, int s, const HsetOptions& opts = {});

// The chained relation H^{s_1} < H^{s_2} < ... < H^{s_t} with x_0 pinned to 0
// in the first set and x_{s_t} pinned to 1 in the last. A trailing part of 0
// stands for the degenerate last set {1}. t = 1 degenerates to pinned_witness.
struct TildeResult {
  bool holds = false;
  std::string reason;
  std::vector<Chain> witnesses;  // one per part; the trailing {1} part gives chain (1)
};
TildeResult tilde_chain(const Mixture& m, const std::vector<int>& composition,
                        const HsetOptions& opts = {});

}  // namespace pspin
