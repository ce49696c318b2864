#include "doctest.h"

#include "hpt/dgla.hpp"
#include "support/corpus.hpp"

using namespace hpt;
using namespace hpt::test;

TEST_CASE("bracket evaluation") {
  const PreBracket g = build(heis_spec());
  const auto& m = g.module();
  auto e = [&](const char* n) { return vec(m, {{n, 1}}); };
  CHECK(g.bracket(e("a"), e("b")) == e("c"));
  CHECK(g.bracket(e("b"), e("a")) == vec(m, {{"c", -1}}));
  CHECK(g.bracket(e("a"), Vector{}).empty());
  CHECK(g.bracket(e("a"), e("a")).empty());
  CHECK_THROWS_AS(g.bracket(e("a"), Vector{{17, Scalar(1)}}), StructuralError);
}

TEST_CASE("structure constant input is checked") {
  GradedModule m({{"a", 0}, {"b", 0}});
  ChainComplex cx = ChainComplex::with_zero_differential(m);
  CHECK_THROWS_AS(PreBracket(cx, {{0, 1, {{1, Scalar(1)}}}, {1, 0, {{1, Scalar(-1)}}}}), StructuralError);
  CHECK_THROWS_AS(PreBracket(cx, {{0, 5, {{1, Scalar(1)}}}}), StructuralError);
  // (j, i) input normalizes to (i, j) by skew symmetry
  const PreBracket g(cx, {{1, 0, {{1, Scalar(-1)}}}});
  CHECK(g.bracket(0, 1) == Vector{{1, Scalar(1)}});
}

TEST_CASE("validate_dgla on the catalog") {
  for (const auto& [name, spec] : catalog()) {
    const Report r = validate_dgla(build(spec));
    CHECK_MESSAGE(r.ok(), name);
  }
  CHECK_NOTHROW(Dgla(build(sl2_spec())));
  CHECK(build(abelian_spec()).is_abelian());
}

TEST_CASE("violations are named") {
  SUBCASE("degree") {
    Spec s{{{"a", 0}, {"b", 0}, {"c", 0}, {"u", 1}}, {{"u", {{"c", 1}}}}, {{"a", "u", {{"a", 1}}}}};
    // [a, u] = a lands in the wrong degree
    const Report r = validate_prebracket(build(s));
    CHECK(r.failed("bracket: degree 0"));
  }
  SUBCASE("d-compatibility pair") {
    Spec s{{{"a", 0}, {"b", 0}, {"c", 0}, {"u", 1}}, {{"u", {{"c", 1}}}}, {{"a", "u", {{"u", 1}}}}};
    // d[a,u] = du = c but [a, du] = [a, c] = 0
    const Report r = validate_prebracket(build(s));
    REQUIRE(r.failed("bracket: d-compatibility"));
    for (const auto& f : r.failures())
      if (f.identity == "bracket: d-compatibility") CHECK(f.witness == "(a,u)");
  }
  SUBCASE("Jacobi") {
    Spec s{{{"x", 0}, {"y", 0}, {"z", 0}}, {}, {{"x", "y", {{"z", 1}}}, {"y", "z", {{"x", 1}}}, {"z", "x", {{"z", 1}}}}};
    const Report r = validate_dgla(build(s));
    CHECK(r.failed("bracket: Jacobi"));
    CHECK_FALSE(validate_prebracket(build(s)).failed("bracket: Jacobi"));
    CHECK_THROWS_AS(Dgla(build(s)), ValidationError);
  }
  SUBCASE("even self bracket") {
    Spec s{{{"x", 0}, {"y", 0}}, {}, {{"x", "x", {{"y", 1}}}}};
    CHECK(validate_prebracket(build(s)).failed("bracket: skew-symmetry"));
  }
}

TEST_CASE("basis changes preserve the axioms") {
  std::mt19937_64 rng(3);
  for (const auto& [name, spec] : catalog())
    for (int k = 0; k < 3; ++k) CHECK_MESSAGE(validate_dgla(change_basis(build(spec), rng)).ok(), name);
}
