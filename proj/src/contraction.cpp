#include "hpt/contraction.hpp"

#include "hpt/linalg.hpp"

#include <map>
#include <set>

namespace hpt {

namespace {

bool shapes_ok(const RawContraction& c, Report& report) {
  std::string problem;
  if (!(c.nabla.source() == c.small.module) || !(c.nabla.target() == c.big.module) ||
      c.nabla.degree() != 0)
    problem = "nabla";
  else if (!(c.pi.source() == c.big.module) || !(c.pi.target() == c.small.module) ||
           c.pi.degree() != 0)
    problem = "pi";
  else if (!(c.h.source() == c.big.module) || !(c.h.target() == c.big.module) ||
           (c.h.degree() != 1 && !c.h.is_zero()))
    problem = "h";
  if (problem.empty()) return true;
  report.fail("shape", problem);
  return false;
}

}  // namespace

Report validate_contraction(const RawContraction& c) {
  Report report;
  if (!shapes_ok(c, report)) return report;
  const auto& d_big = c.big.d;
  const auto& d_small = c.small.d;

  check_equal(report, "chain map: nabla", 0, compose(d_big, c.nabla), compose(c.nabla, d_small));
  check_equal(report, "chain map: pi", 0, compose(d_small, c.pi), compose(c.pi, d_big));
  check_equal(report, "retraction: pi nabla=Id", 0, compose(c.pi, c.nabla),
              GradedMap::identity(c.small.module));
  GradedMap h = c.h;
  if (h.degree() != 1) h = GradedMap(c.big.module, c.big.module, 1);
  check_equal(report, "homotopy: Dh=Id-nabla pi", 0, hom_differential(h, d_big, d_big),
              GradedMap::identity(c.big.module) - compose(c.nabla, c.pi));
  check_zero(report, "side: pi h=0", 0, compose(c.pi, h));
  check_zero(report, "side: h nabla=0", 0, compose(h, c.nabla));
  check_zero(report, "side: hh=0", 0, compose(h, h));
  return report;
}

Contraction::Contraction(RawContraction raw) : raw_(std::move(raw)) {
  Report report = validate_contraction(raw_);
  if (!report.ok()) {
    const auto failure = *report.first_failure();
    throw ValidationError("invalid contraction: " + failure.identity + " fails at " + failure.witness,
                          std::move(report));
  }
}

Contraction trivial_contraction(const ChainComplex& complex) {
  const auto& m = complex.module;
  return Contraction(RawContraction{complex, complex, GradedMap::identity(m), GradedMap::identity(m),
                                    GradedMap(m, m, 1)});
}

Contraction build_homology_contraction(const ChainComplex& complex) {
  const auto& module = complex.module;
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < module.size(); ++i) by_degree[module.degree(i)].push_back(i);

  auto block = [&](int n) -> const std::vector<std::size_t>& {
    static const std::vector<std::size_t> empty;
    auto it = by_degree.find(n);
    return it == by_degree.end() ? empty : it->second;
  };
  // d restricted to degree n -> n-1, rows/cols in block order
  auto d_block = [&](int n) {
    const auto& src = block(n);
    const auto& tgt = block(n - 1);
    DenseMatrix m(tgt.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
      for (std::size_t r = 0; r < tgt.size(); ++r) m(r, c) = complex.d.entry(tgt[r], src[c]);
    return m;
  };

  // For each degree n: C_n = pivot generators of d_n, B_{n-1} = their images.
  struct Pieces {
    std::vector<std::vector<Scalar>> boundaries;   // B_n in block coordinates
    std::vector<std::size_t> boundary_preimage;    // generator in degree n+1 hit by each b
    std::vector<std::vector<Scalar>> homology;     // H_n
    std::vector<std::size_t> complement;           // C_n, as block positions
  };
  std::map<int, Pieces> pieces;
  for (const auto& [n, gens] : by_degree) pieces[n];

  for (const auto& [n, gens] : by_degree) {
    const DenseMatrix dn = d_block(n);
    const RowEchelon ech = row_reduce(dn);
    for (auto col : ech.pivots) {
      pieces[n].complement.push_back(col);
      if (!pieces.count(n - 1)) throw StructuralError("differential into an empty degree");
      pieces[n - 1].boundaries.push_back(dn.column(col));
      pieces[n - 1].boundary_preimage.push_back(gens[col]);
    }
  }

  std::vector<Generator> small_gens;
  struct HomologyClass {
    int degree;
    std::vector<Scalar> vector;
  };
  std::vector<HomologyClass> classes;

  for (auto& [n, piece] : pieces) {
    const auto& gens = block(n);
    std::vector<std::vector<Scalar>> span = piece.boundaries;
    auto independent = [&](const std::vector<Scalar>& v) {
      DenseMatrix m(gens.size(), span.size() + 1);
      for (std::size_t c = 0; c < span.size(); ++c)
        for (std::size_t r = 0; r < gens.size(); ++r) m(r, c) = span[c][r];
      for (std::size_t r = 0; r < gens.size(); ++r) m(r, span.size()) = v[r];
      return rank(m) == span.size() + 1;
    };
    for (auto& z : kernel_basis(d_block(n))) {
      if (!independent(z)) continue;
      span.push_back(z);
      piece.homology.push_back(z);
      std::size_t support = 0;
      std::size_t at = 0;
      for (std::size_t r = 0; r < z.size(); ++r)
        if (z[r] != 0) {
          ++support;
          at = r;
        }
      std::string name = (support == 1 && z[at] == 1)
                             ? "[" + module.name(gens[at]) + "]"
                             : "[H" + std::to_string(n) + "_" + std::to_string(piece.homology.size()) + "]";
      small_gens.push_back({name, n});
      classes.push_back({n, z});
    }
  }

  GradedModule small(small_gens);
  GradedMap nabla(small, module, 0);
  GradedMap pi(module, small, 0);
  GradedMap h(module, module, 1);

  std::size_t class_offset = 0;
  for (auto& [n, piece] : pieces) {
    const auto& gens = block(n);
    // change of basis: columns B | H | C
    DenseMatrix q(gens.size(), gens.size());
    std::size_t col = 0;
    for (const auto& b : piece.boundaries) {
      for (std::size_t r = 0; r < gens.size(); ++r) q(r, col) = b[r];
      ++col;
    }
    for (const auto& z : piece.homology) {
      for (std::size_t r = 0; r < gens.size(); ++r) q(r, col) = z[r];
      ++col;
    }
    for (auto c : piece.complement) {
      q(c, col) = 1;
      ++col;
    }
    if (col != gens.size()) throw StructuralError("homology decomposition has wrong rank");
    const auto qinv = inverse(q);
    if (!qinv) throw StructuralError("homology decomposition is not a basis");

    const std::size_t nb = piece.boundaries.size();
    const std::size_t nh = piece.homology.size();
    for (std::size_t k = 0; k < nh; ++k)
      for (std::size_t r = 0; r < gens.size(); ++r)
        nabla.add_entry(gens[r], class_offset + k, piece.homology[k][r]);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      for (std::size_t k = 0; k < nh; ++k) pi.add_entry(class_offset + k, gens[g], (*qinv)(nb + k, g));
      for (std::size_t b = 0; b < nb; ++b) h.add_entry(piece.boundary_preimage[b], gens[g], (*qinv)(b, g));
    }
    class_offset += nh;
  }

  return Contraction(RawContraction{complex, ChainComplex::with_zero_differential(small),
                                    std::move(nabla), std::move(pi), std::move(h)});
}

}  // namespace hpt
