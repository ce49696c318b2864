#pragma once

#include "hpt/contraction.hpp"
#include "hpt/dgla.hpp"
#include "hpt/sym_coalgebra.hpp"

#include <map>
#include <memory>
#include <vector>

namespace hpt {

/// The coderivation ∂ of S^c[sg] whose only corestriction is
/// s ∘ ½[τ_g, τ_g] on weight-two words.
Coderivation cce_perturbation(const SymCoalgebra& sg_words, const PreBracket& g);

/// State of the recursion for the transferred structure, truncated at weight W.
///
///   τ^1 = ∇ τ_M,   τ^j = ½ h Σ_{p+q=j} [τ^p, τ^q],
///   τ_M 𝒟^{j-1} = ½ π Σ_{p+q=j} [τ^p, τ^q]   on weight-j words.
///
/// τ^j lives on weight j; 𝒟^j has its corestriction on weight j + 1.
class TransferState {
public:
  /// Throws StructuralError unless the contraction's big complex is g's complex.
  TransferState(PreBracket g, Contraction contraction, int max_weight);

  const PreBracket& g() const { return g_; }
  const Contraction& contraction() const { return contraction_; }
  int max_weight() const { return max_weight_; }
  const GradedModule& m() const { return contraction_.small().module; }
  const SymCoalgebra& coalgebra() const { return *coalgebra_; }
  std::shared_ptr<const SymCoalgebra> coalgebra_ptr() const { return coalgebra_; }
  const ChainComplex& sm() const { return sm_; }
  const Coderivation& d0() const { return d0_; }

  /// Number of τ components computed so far.
  int computed() const { return static_cast<int>(tau_.size()); }
  /// Computes τ^j and, for j >= 2, 𝒟^{j-1}. Throws unless j == computed() + 1 <= W.
  void step(int j);
  void run();

  const GradedMap& tau(int j) const;                // τ^j, 1 <= j <= computed()
  const Coderivation& coderivation(int j) const;    // 𝒟^j, 1 <= j < computed()

  GradedMap tau_partial(int a) const;               // τ_a
  GradedMap coderivation_partial(int a) const;      // 𝒟_a expanded (𝒟_0 = 0)
  GradedMap tau_total() const { return tau_partial(computed()); }
  GradedMap perturbation_total() const { return coderivation_partial(computed() - 1); }

  /// ½ Σ_{p+q=j} [τ^p, τ^q] on weight-j words.
  const GradedMap& half_bracket_sum(int j) const;

private:
  PreBracket g_;
  Contraction contraction_;
  int max_weight_;
  ChainComplex sm_;
  std::shared_ptr<const SymCoalgebra> coalgebra_;
  Coderivation d0_;
  std::vector<GradedMap> tau_;
  std::vector<Coderivation> d_;
  std::vector<GradedMap> half_sums_;
};

/// Full recursion through weight W.
TransferState run_transfer(const PreBracket& g, const Contraction& c, int max_weight);

/// Brackets l_k on M read off a coalgebra perturbation of d^0 on S^c[sM]:
///
///   l_k(x_1, ..., x_k) = -(-1)^{Σ_i (k-i)|x_i|} τ_M 𝒟(sx_1 ⋯ sx_k),
///
/// so that l_1 = d_M and l_2 is the bracket itself for the trivial contraction.
class LInftyStructure {
public:
  LInftyStructure(std::shared_ptr<const SymCoalgebra> coalgebra, GradedModule m,
                  std::map<int, GradedMap> tables);

  const GradedModule& m() const { return m_; }
  const SymCoalgebra& coalgebra() const { return *coalgebra_; }
  int max_arity() const { return coalgebra_->max_weight(); }
  /// l_k on canonical words of weight k: words -> M, degree -2 in word degrees.
  const GradedMap& table(int k) const;
  /// l_k on generators of M in the given order.
  Vector evaluate(const std::vector<std::size_t>& args) const;
  bool trivial_above(int k) const;

private:
  std::shared_ptr<const SymCoalgebra> coalgebra_;
  GradedModule m_;
  std::map<int, GradedMap> tables_;
};

/// Throws ValidationError naming the first word where (d^0 + 𝒟)^2 ≠ 0.
LInftyStructure brackets_from_coderivation(std::shared_ptr<const SymCoalgebra> coalgebra,
                                           const GradedModule& m, const Coderivation& d0,
                                           const GradedMap& perturbation);
LInftyStructure brackets(const TransferState& state);
/// Inverse of the above: d_M from l_1 and the coderivation 𝒟 from l_k, k >= 2.
ChainComplex unary_complex(const LInftyStructure& l);
Coderivation coderivation_from_brackets(const LInftyStructure& l);
/// (d^0 + 𝒟)^2 = 0 for the coderivation rebuilt from the brackets.
Report verify_brackets(const LInftyStructure& l);

struct Obstruction {
  int stage = 0;
  GradedMap theta;     // Θ_{a+1} on all words
  GradedMap vartheta;  // its restriction to weight a + 1
};

/// Θ_{a+1} = -Dτ_a - τ_a 𝒟_{a-1} + ½[τ_a, τ_a]; needs 1 <= a <= computed().
Obstruction compute_obstruction(const TransferState& state, int a);

/// The eight identities at stage a (1 <= a <= W-1).
Report verify_stage(const TransferState& state, int a);
/// Explicit low-stage forms: ϑ_2 = ½[τ^1,τ^1], d^0𝒟^1 + 𝒟^1 d^0 = 0,
/// ϑ_3 = [τ^1,τ^2] - τ^2𝒟^1, πϑ_3 = τ_M 𝒟^2, d^0𝒟^2 + 𝒟^1𝒟^1 + 𝒟^2 d^0 = 0,
/// and 𝒟^1𝒟^1 = 0 for trivial contractions or a zero differential on M.
Report verify_low_stages(const TransferState& state);
/// πτ = τ_M, hτ = 0, (d^0 + 𝒟)^2 = 0, 𝒟 a coderivation, and the master
/// equation Dτ + τ𝒟 = ½[τ, τ] on F_W.
Report verify_transfer(const TransferState& state);

}  // namespace hpt
