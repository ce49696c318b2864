#pragma once

// Independent reference computations used to cross-check the engine.

#include "hpt/contraction.hpp"
#include "hpt/dgla.hpp"
#include "hpt/transfer.hpp"

#include <random>

namespace hpt::test {

// One-level tree formula for the ternary bracket on M, e_i = |x_i|:
//   l_3 = π( -(-1)^{e1} [∇x1, h[∇x2,∇x3]] + (-1)^{e1 e2 + e2} [∇x2, h[∇x1,∇x3]]
//            - (-1)^{e1 e3 + e2 e3 + e3} [∇x3, h[∇x1,∇x2]] )
Vector l3_tree_oracle(const PreBracket& g, const Contraction& c, std::size_t x1, std::size_t x2, std::size_t x3);

// The binary bracket of an L∞ structure with l_1 as differential.
PreBracket l2_as_bracket(const LInftyStructure& l);

// Random reordering of the generators of g and of M, with the transported data.
struct Relabeled {
  PreBracket g;
  Contraction c;
  GradedMap g_map;  // old g -> new g
  GradedMap m_map;  // old M -> new M
};
Relabeled relabel(const PreBracket& g, const Contraction& c, std::mt19937_64& rng);

// s Q s^{-1} from the letters of a to the letters of b.
GradedMap suspended_permutation(const GradedMap& q, const TransferState& a, const TransferState& b);

// Ψ as the inverse of a unitriangular operator by dense Gauss-Jordan elimination.
GradedMap dense_inverse(const GradedMap& phi);

}  // namespace hpt::test
