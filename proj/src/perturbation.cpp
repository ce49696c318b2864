#include "hpt/perturbation.hpp"

#include <string>

namespace hpt {

namespace {

GradedMap suspend_values(const GradedMap& f, const GradedModule& suspended) {
  GradedMap out(f.source(), suspended, f.degree() + 1);
  for (std::size_t w = 0; w < f.source().size(); ++w)
    if (!f.column(w).empty()) out.set_column(w, f.column(w));
  return out;
}

std::vector<std::size_t> word_weights(const SymCoalgebra& c) {
  std::vector<std::size_t> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c.weight(i);
  return out;
}

[[noreturn]] void reject(const std::string& what, Report report) {
  const auto failure = *report.first_failure();
  std::string msg = what + ": " + failure.identity + " fails at " + failure.witness;
  throw ValidationError(msg, std::move(report));
}

}  // namespace

GradedMap weight_component(const GradedMap& f, const std::vector<std::size_t>& source_weight,
                           const std::vector<std::size_t>& target_weight, std::size_t r) {
  GradedMap out(f.source(), f.target(), f.degree());
  for (std::size_t s = 0; s < f.source().size(); ++s)
    for (const auto& [t, x] : f.column(s))
      if (target_weight[t] + r == source_weight[s]) out.add_entry(t, s, x);
  return out;
}

void require_filtered(const GradedMap& f, const std::vector<std::size_t>& source_weight,
                      const std::vector<std::size_t>& target_weight, bool strict, const char* what) {
  if (source_weight.size() != f.source().size() || target_weight.size() != f.target().size())
    throw StructuralError(std::string(what) + ": weight table has the wrong size");
  for (std::size_t s = 0; s < f.source().size(); ++s)
    for (const auto& [t, x] : f.column(s))
      if (target_weight[t] > source_weight[s] || (strict && target_weight[t] == source_weight[s]))
        throw StructuralError(std::string(what) + (strict ? " does not lower weight at " : " raises weight at ") +
                              f.source().name(s));
}

PerturbedContraction ordinary_perturbation_lemma(const FilteredContraction& fc, const GradedMap& p) {
  const Contraction& c = fc.contraction;
  const auto& big = c.big().module;
  const auto& small = c.small().module;
  if (!(p.source() == big) || !(p.target() == big) || p.degree() != -1)
    throw StructuralError("perturbation must be a degree -1 endomorphism of the big complex");
  const auto& bw = fc.big_weight;
  const auto& sw = fc.small_weight;
  require_filtered(p, bw, bw, true, "perturbation");
  require_filtered(c.big().d, bw, bw, false, "big differential");
  require_filtered(c.small().d, sw, sw, false, "small differential");
  require_filtered(c.nabla(), sw, bw, false, "nabla");
  require_filtered(c.pi(), bw, sw, false, "pi");
  require_filtered(c.h(), bw, bw, false, "h");

  const GradedMap total = c.big().d + p;
  Report r;
  check_zero(r, "(d+p)^2=0", 0, compose(total, total));
  if (!r.ok()) reject("not a perturbation", std::move(r));

  const GradedMap a = -compose(c.h(), p);  // -h∂
  const GradedMap b = -compose(p, c.h());  // -∂h
  GradedMap nabla = c.nabla(), h = c.h(), pi = c.pi();
  GradedMap tn = nabla, th = h, tp = pi;
  for (int n = 1; n <= fc.max_weight; ++n) {
    tn = compose(a, tn);
    th = compose(a, th);
    tp = compose(tp, b);
    if (tn.is_zero() && th.is_zero() && tp.is_zero()) break;
    nabla += tn;
    h += th;
    pi += tp;
  }
  GradedMap delta = compose(c.pi(), compose(p, nabla));
  ChainComplex small_out(small, c.small().d + delta);
  return PerturbedContraction{std::move(delta), std::move(nabla), std::move(pi), std::move(h), std::move(small_out),
                              ChainComplex(big, total)};
}

SymContraction sc_functor_contraction(const Contraction& c, int max_weight,
                                      std::shared_ptr<const SymCoalgebra> small_words) {
  const ChainComplex sg = suspend(c.big());
  const ChainComplex sm = suspend(c.small());
  auto big_words = std::make_shared<const SymCoalgebra>(sg.module, max_weight);
  if (!small_words)
    small_words = std::make_shared<const SymCoalgebra>(sm.module, max_weight);
  else if (!(small_words->letters() == sm.module) || small_words->max_weight() != max_weight)
    throw StructuralError("sc_functor_contraction: coalgebra does not match the small complex");

  const GradedMap s_g = suspension_map(c.big().module, sg.module);
  const GradedMap sinv_g = suspension_map(sg.module, c.big().module);
  const GradedMap s_m = suspension_map(c.small().module, sm.module);
  const GradedMap sinv_m = suspension_map(sm.module, c.small().module);
  const GradedMap snabla = compose(s_g, compose(c.nabla(), sinv_m));
  const GradedMap spi = compose(s_m, compose(c.pi(), sinv_g));
  const GradedMap sh = -compose(s_g, compose(c.h(), sinv_g));

  RawContraction raw{ChainComplex(big_words->words(), coderivation_from_letter_map(*big_words, sg.d).expanded),
                     ChainComplex(small_words->words(), coderivation_from_letter_map(*small_words, sm.d).expanded),
                     symmetric_power(*small_words, *big_words, snabla),
                     symmetric_power(*big_words, *small_words, spi),
                     symmetrized_homotopy(*big_words, compose(snabla, spi), sh)};
  FilteredContraction fc{Contraction(std::move(raw)), word_weights(*small_words), word_weights(*big_words),
                         max_weight};
  return SymContraction{std::move(small_words), std::move(big_words), std::move(fc)};
}

GradedMap compose_phi(const GradedMap& tau_bar, const GradedMap& pi_tilde) { return compose(pi_tilde, tau_bar); }

GradedMap invert_phi(const GradedMap& phi, const SymCoalgebra& c) {
  if (!(phi.source() == c.words()) || !(phi.target() == c.words()) || phi.degree() != 0)
    throw StructuralError("invert_phi: expected a degree 0 endomorphism of the words");
  const auto w = word_weights(c);
  require_filtered(phi, w, w, false, "phi");
  const GradedMap id = GradedMap::identity(c.words());
  if (const auto bad = first_difference(weight_component(phi, w, w, 0), id))
    throw StructuralError("invert_phi: leading part is not the identity at " + c.words().name(*bad));

  const auto n = static_cast<std::size_t>(c.max_weight());
  std::vector<GradedMap> phis{id}, psis{id};
  for (std::size_t i = 1; i <= n; ++i) phis.push_back(weight_component(phi, w, w, i));
  GradedMap psi = id;
  for (std::size_t j = 1; j <= n; ++j) {
    GradedMap next(c.words(), c.words(), 0);
    for (std::size_t i = 1; i <= j; ++i) next -= compose(phis[i], psis[j - i]);
    psi += next;
    psis.push_back(std::move(next));
  }
  return psi;
}

FinalContraction assemble_final_contraction(const PreBracket& g, const Contraction& c, int max_weight) {
  return assemble_final_contraction(run_transfer(g, c, max_weight));
}

FinalContraction assemble_final_contraction(TransferState state) {
  if (state.computed() < state.max_weight()) state.run();
  const int W = state.max_weight();
  SymContraction functor = sc_functor_contraction(state.contraction(), W, state.coalgebra_ptr());
  const SymCoalgebra& big = *functor.big_words;
  const SymCoalgebra& small = *functor.small_words;
  Coderivation cce = cce_perturbation(big, state.g());
  PerturbedContraction perturbed = ordinary_perturbation_lemma(functor.filtered, cce.expanded);

  GradedMap tau_bar = coalgebra_morphism(small, big, suspend_values(state.tau_total(), big.letters()));
  GradedMap phi = compose_phi(tau_bar, perturbed.pi);
  GradedMap psi = invert_phi(phi, small);
  GradedMap pi = compose(psi, perturbed.pi);
  GradedMap h = perturbed.h - compose(perturbed.h, compose(tau_bar, pi));
  ChainComplex source(small.words(), state.d0().expanded + state.perturbation_total());
  ChainComplex target = perturbed.big;
  return FinalContraction{std::move(state), std::move(functor), std::move(cce), std::move(perturbed),
                          std::move(tau_bar), std::move(phi), std::move(psi), std::move(pi),
                          std::move(h), std::move(source), std::move(target)};
}

Report verify_final_contraction(const FinalContraction& f) {
  const GradedMap id_small = GradedMap::identity(f.source.module);
  const GradedMap id_big = GradedMap::identity(f.target.module);
  Report r;
  check_equal(r, "Pi.taubar=Id", 0, compose(f.pi, f.tau_bar), id_small);
  check_equal(r, "DH=Id-taubar.Pi", 0, hom_differential(f.h, f.target.d, f.target.d),
              id_big - compose(f.tau_bar, f.pi));
  check_zero(r, "Pi.H=0", 0, compose(f.pi, f.h));
  check_zero(r, "H.taubar=0", 0, compose(f.h, f.tau_bar));
  check_zero(r, "H.H=0", 0, compose(f.h, f.h));
  return r;
}

Report verify_final_supplementary(const FinalContraction& f) {
  const GradedMap id_small = GradedMap::identity(f.source.module);
  const auto& small_d = f.perturbed.small.d;
  Report r;
  check_zero(r, "taubar chain map", 0, hom_differential(f.tau_bar, f.source.d, f.target.d));
  r.append(check_coalgebra_morphism(*f.functor.small_words, *f.functor.big_words, f.tau_bar,
                                    "taubar coalgebra morphism"));
  check_zero(r, "Pi chain map", 0, hom_differential(f.pi, f.target.d, f.source.d));
  check_zero(r, "Phi chain map", 0, hom_differential(f.phi, f.source.d, small_d));
  check_equal(r, "Phi.Psi=Id", 0, compose(f.phi, f.psi), id_small);
  check_equal(r, "Psi.Phi=Id", 0, compose(f.psi, f.phi), id_small);
  check_equal(r, "Phi.Pi=Pi~", 0, compose(f.phi, f.pi), f.perturbed.pi);
  const Report perturbed = validate_contraction(f.perturbed.raw());
  for (auto check : perturbed.checks()) {
    check.identity = "perturbed " + check.identity;
    r.add(std::move(check));
  }
  return r;
}

}  // namespace hpt
