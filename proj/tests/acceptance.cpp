// Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
// exact (tolerance zero over Q); wall-clock limits apply where stated.

#include "hpt/perturbation.hpp"
#include "hpt/transfer.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace hpt;
using namespace hpt::test;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Records the first failure; later ones only bump the count.
class Tally {
public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << "; " << checks_ << " exact checks";
    if (failures_) s << ", " << failures_ << " failed, first: " << first_;
    return {failures_ == 0, s.str()};
  }

private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

std::string first_identity(const Report& r) {
  const auto f = r.first_failure();
  return f ? f->identity + " at " + f->witness : std::string();
}

int failed_criteria = 0;

void run(int number, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_seconds <= 0 || secs < limit_seconds;
  const bool ok = o.passed && in_time;
  if (!ok) ++failed_criteria;
  std::printf("[%s] %2d %s: %s; tolerance 0 (exact); %.3f s", ok ? "PASS" : "FAIL", number, title.c_str(),
              o.detail.c_str(), secs);
  if (limit_seconds > 0) std::printf(" (limit %.0f s%s)", limit_seconds, in_time ? "" : ", EXCEEDED");
  std::printf("\n");
  std::fflush(stdout);
}

// Rank by plain Gaussian elimination, kept separate from the library's linalg.
std::size_t independent_rank(std::vector<std::vector<Scalar>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Scalar f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Rank of the block of `op` from words of weight n to words of weight n - 1.
std::size_t block_rank(const GradedMap& op, const SymCoalgebra& c, std::size_t n) {
  if (n == 0 || static_cast<int>(n) > c.max_weight()) return 0;
  const auto& src = c.words_of_weight(n);
  const auto& tgt = c.words_of_weight(n - 1);
  std::vector<std::vector<Scalar>> rows(tgt.size(), std::vector<Scalar>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j)
    for (std::size_t i = 0; i < tgt.size(); ++i) rows[i][j] = op.entry(tgt[i], src[j]);
  return independent_rank(std::move(rows));
}

}  // namespace

int main() {
  const std::vector<Instance> instances = corpus(20, 20240611);
  std::printf("corpus: %zu instances (hand heis, trivial sl2, trivial heis, 20 randomized homology)\n",
              instances.size());

  run(1, "contraction axioms and mutations", 1.0, [&] {
    Tally t;
    std::size_t mutations = 0;
    for (const auto& inst : instances) {
      t.expect(inst.g.dimension() <= 6, inst.name + " has more than 6 generators");
      for (std::size_t i = 0; i < inst.g.dimension(); ++i)
        t.expect(inst.g.module().degree(i) >= 0 && inst.g.module().degree(i) <= 3, inst.name + " degree range");
      const RawContraction& raw = inst.c.raw();
      t.expect(validate_contraction(raw).ok(), inst.name + ": " + first_identity(validate_contraction(raw)));
      for (int which = 0; which < 3; ++which) {
        RawContraction bad = raw;
        GradedMap& f = which == 0 ? bad.nabla : which == 1 ? bad.pi : bad.h;
        std::optional<std::pair<std::size_t, std::size_t>> at;
        for (std::size_t s = 0; s < f.source().size() && !at; ++s)
          if (!f.column(s).empty()) at = {f.column(s).begin()->first, s};
        if (!at) continue;
        f.add_entry(at->first, at->second, Scalar(-2) * f.entry(at->first, at->second));  // flip the sign
        ++mutations;
        const Report r = validate_contraction(bad);
        t.expect(!r.ok() && !r.first_failure()->identity.empty(), inst.name + ": mutation not caught");
      }
    }
    return t.outcome(std::to_string(instances.size()) + " contractions, " + std::to_string(mutations) +
                     " sign-flip mutations");
  });

  // Shared by criteria 2-4.
  std::vector<std::pair<std::string, TransferState>> runs;
  run(2, "(d0+D)^2 = 0 on F_W, W in {3,4,5}", 30.0, [&] {
    Tally t;
    for (int w = 3; w <= 5; ++w)
      for (const auto& inst : instances) {
        TransferState s = run_transfer(inst.g, inst.c, w);
        const GradedMap total = s.d0().expanded + s.perturbation_total();
        t.expect(compose(total, total).is_zero(), inst.name + " W=" + std::to_string(w));
        runs.emplace_back(inst.name + " W=" + std::to_string(w), std::move(s));
      }
    return t.outcome(std::to_string(runs.size()) + " runs, every word of weight <= W");
  });

  run(3, "eight stage identities at every stage a <= W-1, low-stage forms", 0, [&] {
    Tally t;
    std::size_t stages = 0;
    for (const auto& [name, s] : runs) {
      for (int a = 1; a < s.max_weight(); ++a, ++stages) {
        const Report r = verify_stage(s, a);
        t.expect(r.ok() && r.checks().size() == 8, name + " stage " + std::to_string(a) + ": " + first_identity(r));
      }
      const Report low = verify_low_stages(s);
      t.expect(low.ok(), name + ": " + first_identity(low));
    }
    return t.outcome(std::to_string(stages) + " stages over " + std::to_string(runs.size()) + " runs");
  });

  run(4, "side conditions pi.tau = tauM and h.tau = 0", 0, [&] {
    Tally t;
    for (const auto& [name, s] : runs) {
      const Report r = verify_transfer(s);
      for (const auto& c : r.checks())
        if (c.identity == "pi.tau=tauM" || c.identity == "h.tau=0") t.expect(c.passed, name + ": " + c.identity);
    }
    return t.outcome(std::to_string(runs.size()) + " runs");
  });

  // Shared by criteria 5 and 10.
  std::vector<std::pair<std::string, FinalContraction>> finals;
  run(5, "final contraction (taubar, Pi, H) on F_W", 0, [&] {
    Tally t;
    for (int w = 3; w <= 5; ++w) {
      for (const auto& inst : instances) {
        FinalContraction f = assemble_final_contraction(inst.g, inst.c, w);
        const Report r = verify_final_contraction(f);
        t.expect(r.ok() && r.checks().size() == 5, inst.name + ": " + first_identity(r));
        const Report m = check_coalgebra_morphism(*f.functor.small_words, *f.functor.big_words, f.tau_bar,
                                                  "taubar coalgebra morphism");
        t.expect(m.ok(), inst.name + ": " + first_identity(m));
        finals.emplace_back(inst.name + " W=" + std::to_string(w), std::move(f));
      }
    }
    return t.outcome(std::to_string(finals.size()) + " runs, W in {3,4,5}, five identities plus coalgebra morphism");
  });

  run(6, "degeneration: trivial contraction and abelian bracket", 0, [&] {
    Tally t;
    std::size_t cases = 0;
    for (const auto& [name, spec] : catalog()) {
      const PreBracket g = build(spec);
      const TransferState s = run_transfer(g, trivial_contraction(g.complex()), 4);
      t.expect(s.perturbation_total() == cce_perturbation(s.coalgebra(), g).expanded, name + ": D = CCE");
      t.expect(s.tau_total() == tau_projection(s.coalgebra(), g.module()), name + ": tau = tau_g");
      const FinalContraction f = assemble_final_contraction(s);
      t.expect(f.h.is_zero(), name + ": H = 0");
      t.expect(f.pi == GradedMap::identity(f.source.module), name + ": Pi = Id");
      ++cases;
    }
    std::mt19937_64 rng(6);
    std::vector<PreBracket> abelian{build(abelian_spec())};
    for (int i = 0; i < 4; ++i) abelian.push_back(change_basis(build(abelian_spec()), rng));
    for (const auto& g : abelian) {
      const TransferState s = run_transfer(g, build_homology_contraction(g.complex()), 5);
      t.expect(s.tau_total() == s.tau(1), "abelian: tau = tau^1");
      ++cases;
    }
    return t.outcome(std::to_string(cases) + " cases");
  });

  run(7, "bracket oracles on homology: l2 = pi[nabla,nabla], l3 = tree formula", 0, [&] {
    Tally t;
    const auto insts = randomized_homology(10, 777);
    std::size_t evaluations = 0;
    for (const auto& inst : insts) {
      const LInftyStructure l = brackets(run_transfer(inst.g, inst.c, 3));
      const auto& m = inst.c.small().module;
      const auto& nabla = inst.c.nabla();
      const auto& pi = inst.c.pi();
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
          t.expect(l.evaluate({i, j}) == pi.apply(inst.g.bracket(nabla.column(i), nabla.column(j))), inst.name + " l2");
          for (std::size_t k = 0; k < m.size(); ++k, ++evaluations)
            t.expect(l.evaluate({i, j, k}) == l3_tree_oracle(inst.g, inst.c, i, j, k), inst.name + " l3");
        }
    }
    return t.outcome(std::to_string(insts.size()) + " instances, " + std::to_string(evaluations) + " l3 triples");
  });

  run(8, "ordinary perturbation lemma on random filtered contractions", 0, [&] {
    Tally t;
    std::mt19937_64 rng(88);
    std::size_t nontrivial = 0;
    for (int i = 0; i < 20; ++i) {
      const auto inst = random_filtered_perturbation(rng, 1 + i % 4);
      const PerturbedContraction out = ordinary_perturbation_lemma(inst.fc, inst.p);
      const Report r = validate_contraction(out.raw());
      t.expect(r.ok(), "instance " + std::to_string(i) + ": " + first_identity(r));
      if (!out.delta.is_zero()) ++nontrivial;
    }
    t.expect(nontrivial > 0, "every delta vanished");
    for (int i = 0; i < 10; ++i) {
      const auto inst = random_filtered_perturbation(rng, 1);
      const Contraction& c = inst.fc.contraction;
      const GradedMap hp = compose(c.h(), inst.p);
      t.expect(compose(hp, hp).is_zero(), "(h p)^2 != 0 on two weights");
      const PerturbedContraction out = ordinary_perturbation_lemma(inst.fc, inst.p);
      const GradedMap ppn = compose(c.pi(), compose(inst.p, c.nabla()));
      t.expect(out.delta == ppn - compose(c.pi(), compose(inst.p, compose(hp, c.nabla()))), "nilpotent delta");
      t.expect(out.nabla == c.nabla() - compose(hp, c.nabla()), "nilpotent nabla");
      t.expect(out.pi == c.pi() - compose(c.pi(), compose(inst.p, c.h())), "nilpotent pi");
      t.expect(out.h == c.h() - compose(hp, c.h()), "nilpotent h");
    }
    return t.outcome("20 random instances (" + std::to_string(nontrivial) + " with delta != 0), 10 nilpotent");
  });

  run(9, "CCE of sl2: DD = 0 and homology ranks [1,0,0,1]", 1.0, [&] {
    Tally t;
    const PreBracket g = build(sl2_spec());
    const TransferState s = run_transfer(g, trivial_contraction(g.complex()), 4);
    const GradedMap del = s.perturbation_total();
    t.expect(compose(del, del).is_zero(), "DD != 0");
    const SymCoalgebra& c = s.coalgebra();
    std::vector<std::size_t> ranks;
    for (std::size_t n = 0; n <= 3; ++n) {
      const std::size_t dim = c.words_of_weight(n).size();
      ranks.push_back(dim - block_rank(del, c, n) - block_rank(del, c, n + 1));
    }
    t.expect(ranks == std::vector<std::size_t>{1, 0, 0, 1}, "ranks differ");
    std::string shown = "[";
    for (std::size_t i = 0; i < ranks.size(); ++i) shown += (i ? "," : "") + std::to_string(ranks[i]);
    return t.outcome("ranks " + shown + "]");
  });

  run(10, "Phi/Psi inversion and dense oracle", 0, [&] {
    Tally t;
    for (const auto& [name, f] : finals) {
      const GradedMap id = GradedMap::identity(f.source.module);
      t.expect(compose(f.phi, f.psi) == id, name + ": Phi.Psi");
      t.expect(compose(f.psi, f.phi) == id, name + ": Psi.Phi");
      t.expect(f.psi == dense_inverse(f.phi), name + ": dense oracle");
    }
    return t.outcome(std::to_string(finals.size()) + " runs, W in {3,4,5}");
  });

  std::printf("%s: %d criteria failed\n", failed_criteria ? "FAILED" : "OK", failed_criteria);
  return failed_criteria ? 1 : 0;
}
