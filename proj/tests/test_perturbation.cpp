#include "doctest.h"

#include "hpt/perturbation.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace hpt;
using namespace hpt::test;

TEST_CASE("S^c of a contraction") {
  for (const auto& inst : corpus(6, 3)) {
    SymContraction sc = sc_functor_contraction(inst.c, 3);
    CHECK_MESSAGE(validate_contraction(sc.filtered.contraction.raw()).ok(), inst.name);
    CHECK(sc.small_words->max_weight() == 3);
  }
  SUBCASE("trivial contraction stays trivial") {
    const PreBracket g = build(heis5_spec());
    const SymContraction sc = sc_functor_contraction(trivial_contraction(g.complex()), 4);
    const auto& c = sc.filtered.contraction;
    CHECK(c.h().is_zero());
    CHECK(c.nabla() == GradedMap::identity(c.big().module));
    CHECK(c.pi() == GradedMap::identity(c.big().module));
  }
  SUBCASE("mismatched coalgebra") {
    const PreBracket g = build(heis_spec());
    auto other = std::make_shared<const SymCoalgebra>(suspend(g.complex()).module, 3);
    CHECK_THROWS_AS(sc_functor_contraction(heis_contraction(), 3, other), StructuralError);
  }
}

TEST_CASE("weight components") {
  std::mt19937_64 rng(4);
  const auto inst = random_filtered_perturbation(rng, 3);
  const auto& bw = inst.fc.big_weight;
  GradedMap sum(inst.p.source(), inst.p.target(), -1);
  for (std::size_t r = 0; r <= 3; ++r) sum += weight_component(inst.p, bw, bw, r);
  CHECK(sum == inst.p);
  CHECK(weight_component(inst.p, bw, bw, 0).is_zero());
  CHECK_NOTHROW(require_filtered(inst.p, bw, bw, true, "p"));
  CHECK_THROWS_AS(require_filtered(inst.fc.contraction.big().d, bw, bw, true, "d"), StructuralError);
}

TEST_CASE("perturbation lemma on random filtered contractions") {
  std::mt19937_64 rng(2024);
  int nontrivial = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const int w = 1 + trial % 4;
    const auto inst = random_filtered_perturbation(rng, w);
    const PerturbedContraction out = ordinary_perturbation_lemma(inst.fc, inst.p);
    const Report r = validate_contraction(out.raw());
    CHECK_MESSAGE(r.ok(), "trial ", trial, " ", (r.ok() ? "" : r.first_failure()->identity));
    CHECK(compose(out.small.d, out.small.d).is_zero());
    if (!out.delta.is_zero()) ++nontrivial;
  }
  CHECK(nontrivial > 0);
}

TEST_CASE("two filtration steps: the series stop after one correction") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_filtered_perturbation(rng, 1);
    const Contraction& c = inst.fc.contraction;
    const GradedMap& p = inst.p;
    REQUIRE(compose(compose(c.h(), p), compose(c.h(), p)).is_zero());
    const PerturbedContraction out = ordinary_perturbation_lemma(inst.fc, p);
    const GradedMap hp = compose(c.h(), p);
    CHECK(out.delta == compose(c.pi(), compose(p, c.nabla())) - compose(c.pi(), compose(p, compose(hp, c.nabla()))));
    CHECK(out.nabla == c.nabla() - compose(hp, c.nabla()));
    CHECK(out.pi == c.pi() - compose(c.pi(), compose(p, c.h())));
    CHECK(out.h == c.h() - compose(hp, c.h()));
  }
}

TEST_CASE("perturbation lemma rejects bad input") {
  std::mt19937_64 rng(11);
  const auto inst = random_filtered_perturbation(rng, 2);
  const auto& big = inst.fc.contraction.big().module;
  const auto& bw = inst.fc.big_weight;
  SUBCASE("square not zero") {
    // a single weight-lowering entry between generators that d does not kill
    GradedMap q(big, big, -1);
    bool placed = false;
    for (std::size_t s = 0; s < big.size() && !placed; ++s)
      for (std::size_t t = 0; t < big.size() && !placed; ++t)
        if (bw[t] < bw[s] && big.degree(t) == big.degree(s) - 1) {
          GradedMap trial(big, big, -1);
          trial.add_entry(t, s, Scalar(1));
          const GradedMap total = inst.fc.contraction.big().d + trial;
          if (!compose(total, total).is_zero()) {
            q = trial;
            placed = true;
          }
        }
    if (placed) {
      try {
        ordinary_perturbation_lemma(inst.fc, q);
        FAIL("accepted a non-perturbation");
      } catch (const ValidationError& e) {
        CHECK(e.report().failed("(d+p)^2=0"));
        CHECK_FALSE(e.report().first_failure()->witness.empty());
      }
    }
  }
  SUBCASE("not weight lowering") {
    CHECK_THROWS_AS(ordinary_perturbation_lemma(inst.fc, inst.fc.contraction.big().d), StructuralError);
  }
}

TEST_CASE("inverting Phi") {
  for (const auto& inst : corpus(6, 9)) {
    const FinalContraction f = assemble_final_contraction(inst.g, inst.c, 4);
    CHECK_MESSAGE(f.psi == dense_inverse(f.phi), inst.name);
  }
  SUBCASE("leading part must be the identity") {
    SymCoalgebra c(GradedModule({{"x", 0}, {"y", 1}}), 2);
    GradedMap phi = Scalar(2) * GradedMap::identity(c.words());
    CHECK_THROWS_AS(invert_phi(phi, c), StructuralError);
    GradedMap up = GradedMap::identity(c.words());
    up.add_entry(c.words().index("x.x"), c.words().index("x"), Scalar(1));
    CHECK_THROWS_AS(invert_phi(up, c), StructuralError);
  }
}

TEST_CASE("final contraction on the corpus") {
  for (const auto& inst : corpus(10, 5)) {
    const FinalContraction f = assemble_final_contraction(inst.g, inst.c, 4);
    const Report r = verify_final_contraction(f);
    CHECK(r.checks().size() == 5);
    CHECK_MESSAGE(r.ok(), inst.name, " ", (r.ok() ? "" : r.first_failure()->identity));
    const Report s = verify_final_supplementary(f);
    CHECK_MESSAGE(s.ok(), inst.name, " ", (s.ok() ? "" : s.first_failure()->identity));
  }
}

TEST_CASE("trivial contraction gives the identity") {
  const PreBracket g = build(sl2_spec());
  const FinalContraction f = assemble_final_contraction(g, trivial_contraction(g.complex()), 4);
  const GradedMap id = GradedMap::identity(f.source.module);
  CHECK(f.h.is_zero());
  CHECK(f.pi == id);
  CHECK(f.tau_bar == id);
  CHECK(f.phi == id);
}

TEST_CASE("relabeling conjugates Pi and H") {
  std::mt19937_64 rng(17);
  for (const auto& inst : randomized_homology(5, 19)) {
    const Relabeled r = relabel(inst.g, inst.c, rng);
    const FinalContraction a = assemble_final_contraction(inst.g, inst.c, 3);
    const FinalContraction b = assemble_final_contraction(r.g, r.c, 3);
    const GradedMap sq = symmetric_power(a.transfer.coalgebra(), b.transfer.coalgebra(),
                                         suspended_permutation(r.m_map, a.transfer, b.transfer));
    GradedMap sp_letters(a.functor.big_words->letters(), b.functor.big_words->letters(), 0);
    for (std::size_t i = 0; i < sp_letters.source().size(); ++i) sp_letters.set_column(i, r.g_map.column(i));
    const GradedMap sp = symmetric_power(*a.functor.big_words, *b.functor.big_words, sp_letters);
    CHECK_MESSAGE(compose(b.pi, sp) == compose(sq, a.pi), inst.name);
    CHECK_MESSAGE(compose(b.h, sp) == compose(sp, a.h), inst.name);
    CHECK_MESSAGE(compose(b.tau_bar, sq) == compose(sp, a.tau_bar), inst.name);
  }
}

TEST_CASE("degenerate perturbations") {
  std::mt19937_64 rng(31);
  const auto inst = random_filtered_perturbation(rng, 3);
  const Contraction& c = inst.fc.contraction;
  SUBCASE("p = 0") {
    const PerturbedContraction out =
        ordinary_perturbation_lemma(inst.fc, GradedMap(c.big().module, c.big().module, -1));
    CHECK(out.delta.is_zero());
    CHECK(out.nabla == c.nabla());
    CHECK(out.pi == c.pi());
    CHECK(out.h == c.h());
  }
  SUBCASE("the literal minus sign on H~ breaks the homotopy axiom") {
    const PerturbedContraction out = ordinary_perturbation_lemma(inst.fc, inst.p);
    RawContraction raw = out.raw();
    raw.h = -raw.h;
    if (!c.h().is_zero()) CHECK(validate_contraction(raw).failed("homotopy: Dh=Id-nabla pi"));
  }
  SUBCASE("h = 0") {
    const PreBracket g = build(sl2_spec());
    const SymContraction sc = sc_functor_contraction(trivial_contraction(g.complex()), 3);
    const Coderivation del = cce_perturbation(*sc.big_words, g);
    const PerturbedContraction out = ordinary_perturbation_lemma(sc.filtered, del.expanded);
    CHECK(out.delta == del.expanded);
    CHECK(out.nabla == sc.filtered.contraction.nabla());
    CHECK(out.pi == sc.filtered.contraction.pi());
    CHECK(out.h.is_zero());
  }
}

TEST_CASE("S^c homotopy on heis") {
  const SymContraction sc = sc_functor_contraction(heis_contraction(), 3);
  const auto& words = sc.big_words->words();
  const auto& h = sc.filtered.contraction.h();
  CHECK(h.column(words.index("sa.sc")) == Vector{{words.index("sa.su"), Scalar(1)}});
  CHECK(h.column(words.index("sc")) == Vector{{words.index("su"), Scalar(-1)}});
  // weight one is the suspended input contraction
  for (std::size_t i = 0; i < 4; ++i) {
    const std::size_t w = sc.big_words->letter_word(i);
    for (const auto& [t, x] : h.column(w)) CHECK(sc.big_words->weight(t) == 1);
  }
}

TEST_CASE("Psi from the recursion") {
  SymCoalgebra c(GradedModule({{"x", 0}, {"y", 1}, {"z", 2}}), 4);
  const auto& words = c.words();
  const GradedMap id = GradedMap::identity(words);
  CHECK(invert_phi(id, c) == id);
  SUBCASE("square-zero first component") {
    GradedMap phi1(words, words, 0);
    phi1.add_entry(words.index("x"), words.index("x.x"), Scalar(3));
    REQUIRE(compose(phi1, phi1).is_zero());
    CHECK(invert_phi(id + phi1, c) == id - phi1);
  }
  SUBCASE("random unitriangular") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int trial = 0; trial < 5; ++trial) {
      GradedMap phi = id;
      for (std::size_t s = 0; s < c.size(); ++s)
        for (std::size_t t = 0; t < c.size(); ++t)
          if (c.weight(t) < c.weight(s) && c.degree(t) == c.degree(s) && trial + coeff(rng) > 1)
            phi.add_entry(t, s, Scalar(coeff(rng)));
      const GradedMap psi = invert_phi(phi, c);
      CHECK(compose(phi, psi) == id);
      CHECK(compose(psi, phi) == id);
      CHECK(psi == dense_inverse(phi));
    }
  }
}

TEST_CASE("abelian bracket: the pipeline collapses to S^c of the input") {
  const PreBracket g = build(abelian_spec());
  const Contraction c = build_homology_contraction(g.complex());
  const FinalContraction f = assemble_final_contraction(g, c, 3);
  const auto& sc = f.functor.filtered.contraction;
  CHECK(f.perturbed.delta.is_zero());
  CHECK(f.phi == GradedMap::identity(f.source.module));
  CHECK(f.tau_bar == sc.nabla());
  CHECK(f.pi == sc.pi());
  CHECK(f.h == sc.h());
}

TEST_CASE("heis: Phi has a single correction") {
  const FinalContraction f = assemble_final_contraction(build(heis_spec()), heis_contraction(), 3);
  const SymCoalgebra& c = *f.functor.small_words;
  std::vector<std::size_t> w(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) w[i] = c.weight(i);
  const GradedMap id = GradedMap::identity(c.words());
  CHECK(weight_component(f.phi, w, w, 0) == id);
  CHECK(f.phi == id + weight_component(f.phi, w, w, 1));
  CHECK(hom_differential(f.phi, f.source.d, f.perturbed.small.d).is_zero());
  CHECK(verify_final_contraction(f).ok());
}
