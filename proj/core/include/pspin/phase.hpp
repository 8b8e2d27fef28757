#pragma once

#include <vector>

namespace pspin {

enum class PhaseKind { RS, RSB, FRSB };

// Phase of the zero-temperature Parisi measure. For FRSB the composition
// (s_1, ..., s_t) lists the block sizes between smooth segments; a trailing 0
// denotes a final segment reaching 1 with no block after it. f_set lists the
// partial sums w_j = s_1 + ... + s_j for j < t: the indices after which a
// segment sits.
struct PhaseLabel {
  PhaseKind kind = PhaseKind::RS;
  int k = 0;  // 0 for RS
  std::vector<int> composition;
  std::vector<int> f_set;
};

inline std::vector<int> f_set_of_composition(const std::vector<int>& composition) {
  std::vector<int> f;
  int w = 0;
  for (std::size_t j = 0; j + 1 < composition.size(); ++j) {
    w += composition[j];
    f.push_back(w);
  }
  return f;
}

}  // namespace pspin
