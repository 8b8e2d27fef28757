#pragma once

#include <vector>

#include "pspin/hset.hpp"
#include "pspin/kernels.hpp"

namespace pspin::detail {

// A boundary-activated block system on a chain (c_0, ..., c_s):
//   h(c_{l-1}, c_l, r2(c_{l-1},c_l) F_l^{-1} star^{(-1)^{s-l}}) = 0,  l = 1..s
// with star = F_s for PinFirst/Free blocks and star = F_0^{(-1)^s} for PinLast
// blocks; Free blocks carry the extra linking residual F_0 - F_s^{(-1)^s}.
// These are simultaneously the extremal-point equations of H^s and the
// per-block equations of the full-RSB structure.
enum class BlockKind { PinFirst, PinLast, Free };

struct BlockSpec {
  int s = 1;
  BlockKind kind = BlockKind::PinFirst;
};

// Unknown layout: PinFirst -> (c_1..c_s) with c_0 = 0;
//                 PinLast  -> (c_0..c_{s-1}) with c_s = 1;
//                 Free     -> (c_0..c_s).
Chain block_chain(const BlockSpec& bs, const std::vector<double>& unknowns);
std::vector<double> block_residual(const Mixture& m, const BlockSpec& bs, const Chain& c);

// All distinct Newton-converged roots with strictly increasing chains,
// deterministically ordered (lexicographic).
std::vector<Chain> solve_block_all(const Mixture& m, const BlockSpec& bs,
                                   const HsetOptions& opts);

// star value of a solved block chain (F_s, or F_0^{(-1)^s} for PinLast).
double block_star(const Mixture& m, const BlockSpec& bs, const Chain& c);

// Coordinate candidate grid shared by the multistart solvers: uniform sweep
// plus geometric refinement toward 1.
std::vector<double> coord_candidates(int per_list);

}  // namespace pspin::detail
