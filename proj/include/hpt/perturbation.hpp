#pragma once

#include "hpt/contraction.hpp"
#include "hpt/sym_coalgebra.hpp"
#include "hpt/transfer.hpp"

#include <memory>
#include <vector>

namespace hpt {

/// A contraction together with a weight on each generator of both sides.
/// Every map of the contraction must not raise weight; truncation is at W.
struct FilteredContraction {
  Contraction contraction;
  std::vector<std::size_t> small_weight;
  std::vector<std::size_t> big_weight;
  int max_weight = 0;
};

/// The part of f lowering weight by exactly r.
GradedMap weight_component(const GradedMap& f, const std::vector<std::size_t>& source_weight,
                           const std::vector<std::size_t>& target_weight, std::size_t r);
/// Throws StructuralError naming a generator where f raises weight (or,
/// with `strict`, fails to lower it).
void require_filtered(const GradedMap& f, const std::vector<std::size_t>& source_weight,
                      const std::vector<std::size_t>& target_weight, bool strict, const char* what);

/// Output of the ordinary perturbation lemma. With X = Σ (-h∂)^n:
///   δ = π∂X∇,  ∇̃ = X∇,  Π̃ = πΣ(-∂h)^n,  H̃ = Xh,
/// each series summed for n = 0..W. H̃ carries a plus sign so that
/// D H̃ = Id - ∇̃Π̃ holds with the convention Dh = Id - ∇π.
struct PerturbedContraction {
  GradedMap delta;
  GradedMap nabla;
  GradedMap pi;
  GradedMap h;
  ChainComplex small;  // (M, d + δ)
  ChainComplex big;    // (N, d + ∂)

  RawContraction raw() const { return RawContraction{big, small, nabla, pi, h}; }
};

/// Throws ValidationError if (d + p)^2 ≠ 0 and StructuralError if p does not
/// strictly lower weight.
PerturbedContraction ordinary_perturbation_lemma(const FilteredContraction& fc, const GradedMap& p);

/// S^c applied to the suspended contraction (sM ⇄ sg, -s h s^{-1}): coalgebra
/// morphisms S^c[s∇], S^c[sπ] and the symmetrized tensor homotopy, on the
/// word complexes with differentials d^0.
struct SymContraction {
  std::shared_ptr<const SymCoalgebra> small_words;
  std::shared_ptr<const SymCoalgebra> big_words;
  FilteredContraction filtered;
};

/// `small_words`, if given, must be S^c[sM] truncated at the same weight.
SymContraction sc_functor_contraction(const Contraction& c, int max_weight,
                                      std::shared_ptr<const SymCoalgebra> small_words = nullptr);

/// Φ = Π̃ τ̄.
GradedMap compose_phi(const GradedMap& tau_bar, const GradedMap& pi_tilde);
/// Ψ from Ψ^j = -Σ_{i=1..j} Φ^i Ψ^{j-i}, Ψ^0 = Id. Throws unless Φ is the
/// identity modulo weight-lowering terms.
GradedMap invert_phi(const GradedMap& phi, const SymCoalgebra& c);

/// All pieces of the final contraction (S^c_𝒟[sM] ⇄ 𝒞[g], H).
struct FinalContraction {
  TransferState transfer;
  SymContraction functor;
  Coderivation cce;                 // ∂ on S^c[sg]
  PerturbedContraction perturbed;   // (δ, ∇̃, Π̃, H̃)
  GradedMap tau_bar;
  GradedMap phi;
  GradedMap psi;
  GradedMap pi;                     // Π = Ψ Π̃
  GradedMap h;                      // H = H̃ - H̃ τ̄ Π
  ChainComplex source;              // (S^c[sM], d^0 + 𝒟)
  ChainComplex target;              // (S^c[sg], d + ∂)

  RawContraction raw() const { return RawContraction{target, source, tau_bar, pi, h}; }
};

FinalContraction assemble_final_contraction(const PreBracket& g, const Contraction& c, int max_weight);
FinalContraction assemble_final_contraction(TransferState state);

/// Πτ̄ = Id, DH = Id - τ̄Π, ΠH = 0, Hτ̄ = 0, HH = 0.
Report verify_final_contraction(const FinalContraction& f);
/// τ̄ a chain map and a coalgebra morphism, Φ a chain map, ΦΨ = ΨΦ = Id,
/// ΦΠ = Π̃, and the contraction axioms for (∇̃, Π̃, H̃) and S^c of the input.
Report verify_final_supplementary(const FinalContraction& f);

}  // namespace hpt
