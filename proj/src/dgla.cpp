#include "hpt/dgla.hpp"

namespace hpt {

PreBracket::PreBracket(ChainComplex complex, const std::vector<BracketEntry>& constants)
    : complex_(std::move(complex)) {
  const std::size_t n = dimension();
  table_.assign(n, std::vector<Vector>(n));
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (const auto& entry : constants) {
    if (entry.left >= n || entry.right >= n)
      throw StructuralError("bracket constant refers to a foreign generator");
    for (const auto& [k, c] : entry.value)
      if (k >= n) throw StructuralError("bracket value refers to a foreign generator");
    std::size_t i = entry.left;
    std::size_t j = entry.right;
    Vector value = entry.value;
    if (i > j) {
      std::swap(i, j);
      for (auto& [k, c] : value) c *= -koszul_sign(module().degree(i), module().degree(j));
    }
    if (seen[i][j])
      throw StructuralError("bracket constant for (" + module().name(i) + ", " + module().name(j) +
                            ") given twice");
    seen[i][j] = true;
    if (value.empty()) continue;
    constants_.push_back({i, j, value});
    table_[i][j] = value;
    if (i != j) {
      Vector swapped;
      axpy(swapped, Scalar(-koszul_sign(module().degree(i), module().degree(j))), value);
      table_[j][i] = std::move(swapped);
    }
  }
}

const Vector& PreBracket::bracket(std::size_t i, std::size_t j) const {
  if (i >= dimension() || j >= dimension()) throw StructuralError("bracket of foreign generator");
  return table_[i][j];
}

Vector PreBracket::bracket(const Vector& a, const Vector& b) const {
  Vector out;
  for (const auto& [i, x] : a) {
    if (i >= dimension()) throw StructuralError("bracket of foreign generator");
    for (const auto& [j, y] : b) {
      if (j >= dimension()) throw StructuralError("bracket of foreign generator");
      const auto& v = table_[i][j];
      if (!v.empty()) axpy(out, x * y, v);
    }
  }
  return out;
}

bool PreBracket::is_abelian() const { return constants_.empty(); }

namespace {

Vector unit(std::size_t i) { return Vector{{i, Scalar(1)}}; }

std::string pair_name(const GradedModule& m, std::size_t i, std::size_t j) {
  return "(" + m.name(i) + "," + m.name(j) + ")";
}

}  // namespace

Report validate_prebracket(const PreBracket& g) {
  Report report = validate_chain_complex(g.complex());
  const auto& m = g.module();
  const std::size_t n = g.dimension();

  std::string degree_witness;
  std::string skew_witness;
  for (const auto& entry : g.constants()) {
    for (const auto& [k, c] : entry.value) {
      if (m.degree(k) != m.degree(entry.left) + m.degree(entry.right) && degree_witness.empty())
        degree_witness = pair_name(m, entry.left, entry.right);
    }
    if (entry.left == entry.right && m.degree(entry.left) % 2 == 0 && skew_witness.empty())
      skew_witness = pair_name(m, entry.left, entry.right);
  }
  if (degree_witness.empty()) {
    report.pass("bracket: degree 0");
  } else {
    report.fail("bracket: degree 0", degree_witness);
  }
  if (skew_witness.empty()) {
    report.pass("bracket: skew-symmetry");
  } else {
    report.fail("bracket: skew-symmetry", skew_witness);
  }

  // d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]
  std::string compat_witness;
  for (std::size_t i = 0; i < n && compat_witness.empty(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector lhs = g.d().apply(g.bracket(i, j));
      Vector rhs = g.bracket(g.d().column(i), unit(j));
      axpy(rhs, Scalar(parity_sign(m.degree(i))), g.bracket(unit(i), g.d().column(j)));
      if (lhs != rhs) {
        compat_witness = pair_name(m, i, j);
        break;
      }
    }
  }
  if (compat_witness.empty()) {
    report.pass("bracket: d-compatibility");
  } else {
    report.fail("bracket: d-compatibility", compat_witness);
  }
  return report;
}

Report validate_dgla(const PreBracket& g) {
  Report report = validate_prebracket(g);
  const auto& m = g.module();
  const std::size_t n = g.dimension();
  // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
  std::string witness;
  for (std::size_t i = 0; i < n && witness.empty(); ++i) {
    for (std::size_t j = 0; j < n && witness.empty(); ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        Vector lhs = g.bracket(unit(i), g.bracket(j, k));
        Vector rhs = g.bracket(g.bracket(i, j), unit(k));
        axpy(rhs, Scalar(koszul_sign(m.degree(i), m.degree(j))),
             g.bracket(unit(j), g.bracket(i, k)));
        if (lhs != rhs) {
          witness = "(" + m.name(i) + "," + m.name(j) + "," + m.name(k) + ")";
          break;
        }
      }
    }
  }
  if (witness.empty()) {
    report.pass("bracket: Jacobi");
  } else {
    report.fail("bracket: Jacobi", witness);
  }
  return report;
}

Dgla::Dgla(PreBracket pre) : PreBracket(std::move(pre)) {
  Report report = validate_dgla(*this);
  if (!report.ok()) {
    const std::string what = "not a differential graded Lie algebra: " + report.first_failure()->identity;
    throw ValidationError(what, std::move(report));
  }
}

}  // namespace hpt
