#pragma once

#include "hpt/graded.hpp"

#include <vector>

namespace hpt {

/// One structure constant: [g_left, g_right] = value.
struct BracketEntry {
  std::size_t left = 0;
  std::size_t right = 0;
  Vector value;
};

/// Chain complex with a bilinear bracket given by structure constants.
/// Only one of (i, j) and (j, i) may be supplied; the other is synthesized
/// from graded skew-symmetry [x, y] = -(-1)^{|x||y|} [y, x]. Jacobi is not
/// assumed; see Dgla.
class PreBracket {
public:
  PreBracket(ChainComplex complex, const std::vector<BracketEntry>& constants);

  const ChainComplex& complex() const { return complex_; }
  const GradedModule& module() const { return complex_.module; }
  const GradedMap& d() const { return complex_.d; }
  std::size_t dimension() const { return module().size(); }

  const Vector& bracket(std::size_t i, std::size_t j) const;
  Vector bracket(const Vector& a, const Vector& b) const;

  /// The supplied constants, normalized to i <= j.
  const std::vector<BracketEntry>& constants() const { return constants_; }
  bool is_abelian() const;

private:
  ChainComplex complex_;
  std::vector<BracketEntry> constants_;
  std::vector<std::vector<Vector>> table_;
};

/// Degree-zero homogeneity, skew-symmetry on the diagonal and compatibility
/// d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]; plus the chain complex condition.
Report validate_prebracket(const PreBracket& g);
/// validate_prebracket plus the graded Jacobi identity on all generator triples.
Report validate_dgla(const PreBracket& g);

/// A PreBracket whose bracket satisfies the graded Jacobi identity.
class Dgla : public PreBracket {
public:
  /// Throws ValidationError if validate_dgla fails.
  explicit Dgla(PreBracket pre);
  Dgla(ChainComplex complex, const std::vector<BracketEntry>& constants)
      : Dgla(PreBracket(std::move(complex), constants)) {}
};

}  // namespace hpt
