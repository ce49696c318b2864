#pragma once

#include "hpt/dgla.hpp"
#include "hpt/graded.hpp"

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hpt {

/// Basis monomial of the symmetric coalgebra: letters sorted in canonical
/// order; an odd letter occurs at most once.
struct Word {
  std::vector<std::size_t> letters;
  int degree = 0;

  std::size_t weight() const { return letters.size(); }
};

struct SignedIndex {
  int sign = 1;
  std::size_t index = 0;
};

/// Element of S^c ⊗ S^c, keyed by (left word, right word).
using TensorVector = std::map<std::pair<std::size_t, std::size_t>, Scalar>;

/// The symmetric coalgebra S^c[Y] over Q, truncated at weight W, modelled by
/// graded-commutative monomials with the unshuffle diagonal
///
///   Δ(y_1 ⋯ y_n) = Σ ε(I, J) y_I ⊗ y_J
///
/// over ordered splittings of the positions, ε the Koszul sign of the
/// unshuffle. Repeated even letters are distinct positions, so Δ(x²) has
/// the term 2·x⊗x.
///
/// Words are enumerated by weight, then lexicographically; the word module
/// names the unit "1" and other words by their letters joined with '.'.
class SymCoalgebra {
public:
  SymCoalgebra(GradedModule letters, int max_weight);

  const GradedModule& letters() const { return letters_; }
  const GradedModule& words() const { return words_; }
  int max_weight() const { return max_weight_; }
  std::size_t size() const { return basis_.size(); }

  const Word& word(std::size_t i) const { return basis_[i]; }
  std::size_t weight(std::size_t i) const { return basis_[i].weight(); }
  int degree(std::size_t i) const { return basis_[i].degree; }
  std::size_t unit() const { return 0; }
  std::size_t letter_word(std::size_t letter) const { return letter_words_.at(letter); }
  const std::vector<std::size_t>& words_of_weight(std::size_t weight) const;

  std::optional<std::size_t> find(const std::vector<std::size_t>& sorted_letters) const;

  /// Canonical form of the product of `sequence` taken in the given order.
  /// Empty if the product vanishes (a repeated odd letter). Throws
  /// StructuralError if the weight exceeds the truncation.
  std::optional<SignedIndex> normalize(std::span<const std::size_t> sequence) const;

  /// Product in the graded-commutative algebra of two word combinations.
  Vector multiply(const Vector& a, const Vector& b) const;
  /// Product of elements of weight one, each given in the letter basis.
  Vector multiply_letters(const std::vector<Vector>& factors) const;

  /// Calls f(sign, left, right) for every ordered splitting of word w into a
  /// left part of weight p and a right part of the remaining weight.
  template <class F>
  void for_each_unshuffle(std::size_t w, std::size_t p, F&& f) const;

  /// Δ_{p,q}(w) with p, q >= 1; throws unless p + q = weight(w).
  TensorVector reduced_diagonal(std::size_t w, std::size_t p, std::size_t q) const;
  /// Full diagonal, unit factors included.
  TensorVector diagonal(std::size_t w) const;
  TensorVector diagonal(const Vector& v) const;

  /// Weight filtration predicates for GradedMap::restricted.
  auto weight_at_most(std::size_t n) const {
    return [this, n](std::size_t i) { return weight(i) <= n; };
  }
  auto weight_equals(std::size_t n) const {
    return [this, n](std::size_t i) { return weight(i) == n; };
  }

private:
  int sign_of_subset(const Word& w, unsigned mask) const;

  GradedModule letters_;
  int max_weight_;
  std::vector<Word> basis_;
  std::map<std::vector<std::size_t>, std::size_t> lookup_;
  std::vector<std::size_t> letter_words_;
  std::vector<std::vector<std::size_t>> by_weight_;
  GradedModule words_;
};

template <class F>
void SymCoalgebra::for_each_unshuffle(std::size_t w, std::size_t p, F&& f) const {
  const Word& word = basis_[w];
  const std::size_t n = word.weight();
  if (p > n) return;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != p) continue;
    left.clear();
    right.clear();
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? left : right).push_back(word.letters[i]);
    // sub-multisets of a canonical word are canonical
    f(sign_of_subset(word, mask), lookup_.at(left), lookup_.at(right));
  }
}

/// Canonical words of weight <= W in the given order (weight, then lexicographic).
std::vector<Word> enumerate_words(const GradedModule& letters, int max_weight);

/// Degree -1 map S^c[sM] -> M: desuspension on weight one, zero elsewhere.
/// `target` is the desuspended module, index-aligned with the letters.
GradedMap tau_projection(const SymCoalgebra& c, const GradedModule& target);

/// Cup bracket [a, b] = [.,.] ∘ (a ⊗ b) ∘ Δ for cochains vanishing on the unit;
/// (a ⊗ b)(u ⊗ v) = (-1)^{|b||u|} a(u) ⊗ b(v). With `only_weight`, the
/// result is computed on words of that weight alone.
GradedMap cup_bracket(const GradedMap& a, const GradedMap& b, const SymCoalgebra& c,
                      const PreBracket& g, std::optional<std::size_t> only_weight = std::nullopt);

/// Coderivation determined by its corestriction q: S^c -> Y,
///   D(w) = Σ_{I ≠ ∅} ε(I, J) q(w_I) · w_J.
struct Coderivation {
  GradedMap corestriction;  // words -> letters
  GradedMap expanded;       // words -> words
  int degree() const { return corestriction.degree(); }
};

Coderivation make_coderivation(const SymCoalgebra& c, GradedMap corestriction);
/// The coderivation extending a linear map of the letters (e.g. a differential).
Coderivation coderivation_from_letter_map(const SymCoalgebra& c, const GradedMap& f);
Vector expand_coderivation(const SymCoalgebra& c, const GradedMap& corestriction, std::size_t w);

/// Coalgebra morphism S^c[X] -> S^c[Y] with degree-0 corestriction f vanishing
/// on the unit: the unit goes to the unit and
///   F(w) = Σ over unordered partitions of w into blocks B_1..B_k
///          ε · f(w_{B_1}) ⋯ f(w_{B_k}).
GradedMap coalgebra_morphism(const SymCoalgebra& source, const SymCoalgebra& target,
                             const GradedMap& corestriction);
/// S^c[f] for a degree-0 map of letters.
GradedMap symmetric_power(const SymCoalgebra& source, const SymCoalgebra& target,
                          const GradedMap& letter_map);

/// Symmetrization of the tensor homotopy Σ_i (∇π)^{⊗ i-1} ⊗ h ⊗ Id^{⊗ n-i}:
/// on a word of weight n, the term with h on letter k and ∇π on the subset A
/// of the other letters carries the factor |A|! (n-1-|A|)! / n!.
GradedMap symmetrized_homotopy(const SymCoalgebra& c, const GradedMap& nabla_pi,
                               const GradedMap& h);

/// Δ∘D = (D⊗Id + Id⊗D)∘Δ on every word.
Report check_coderivation_law(const SymCoalgebra& c, const GradedMap& op, const std::string& identity);
/// Δ∘F = (F⊗F)∘Δ on every source word.
Report check_coalgebra_morphism(const SymCoalgebra& source, const SymCoalgebra& target,
                                const GradedMap& morphism, const std::string& identity);

}  // namespace hpt
