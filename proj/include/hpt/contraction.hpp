#pragma once

#include "hpt/graded.hpp"

namespace hpt {

/// Unchecked contraction data: nabla: small -> big, pi: big -> small,
/// h: big -> big of degree +1.
struct RawContraction {
  ChainComplex big;
  ChainComplex small;
  GradedMap nabla;
  GradedMap pi;
  GradedMap h;
};

/// Checks that nabla and pi are chain maps, pi nabla = Id, Dh = Id - nabla pi,
/// and the side conditions pi h = 0, h nabla = 0, h h = 0. Every identity is
/// checked exactly and reported with the first failing generator.
Report validate_contraction(const RawContraction& c);

/// A contraction that passed validate_contraction. Immutable.
class Contraction {
public:
  /// Throws ValidationError on invalid data.
  explicit Contraction(RawContraction raw);

  const ChainComplex& big() const { return raw_.big; }
  const ChainComplex& small() const { return raw_.small; }
  const GradedMap& nabla() const { return raw_.nabla; }
  const GradedMap& pi() const { return raw_.pi; }
  const GradedMap& h() const { return raw_.h; }
  const RawContraction& raw() const { return raw_; }

private:
  RawContraction raw_;
};

/// (Id, Id, 0) on the given complex.
Contraction trivial_contraction(const ChainComplex& complex);

/// Contraction onto a complex with zero differential whose rank in each degree
/// is the homology rank. Bases are chosen by Gaussian elimination with pivots
/// in canonical generator order, so the result is deterministic.
Contraction build_homology_contraction(const ChainComplex& complex);

}  // namespace hpt
