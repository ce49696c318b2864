#include "hpt/transfer.hpp"

namespace hpt {

namespace {

// s ∘ f as an index identity into the suspended letters (no sign: s is applied last).
GradedMap suspend_values(const GradedMap& f, const GradedModule& suspended) {
  GradedMap out(f.source(), suspended, f.degree() + 1);
  for (std::size_t w = 0; w < f.source().size(); ++w)
    if (!f.column(w).empty()) out.set_column(w, f.column(w));
  return out;
}

bool same_complex(const ChainComplex& a, const ChainComplex& b) {
  return a.module == b.module && a.d == b.d;
}

}  // namespace

Coderivation cce_perturbation(const SymCoalgebra& c, const PreBracket& g) {
  if (c.letters().size() != g.dimension())
    throw StructuralError("cce_perturbation: letters do not match the bracket's module");
  for (std::size_t i = 0; i < g.dimension(); ++i)
    if (c.letters().degree(i) != g.module().degree(i) + 1)
      throw StructuralError("cce_perturbation: letters must be the suspension of g");
  const GradedMap tau_g = tau_projection(c, g.module());
  GradedMap half = Scalar(1, 2) * cup_bracket(tau_g, tau_g, c, g, 2);
  if (half.is_zero()) half = GradedMap(c.words(), g.module(), -2);
  return make_coderivation(c, suspend_values(half, c.letters()));
}

TransferState::TransferState(PreBracket g, Contraction contraction, int max_weight)
    : g_(std::move(g)),
      contraction_(std::move(contraction)),
      max_weight_(max_weight),
      sm_(suspend(contraction_.small())),
      coalgebra_(std::make_shared<const SymCoalgebra>(sm_.module, max_weight)),
      d0_(coderivation_from_letter_map(*coalgebra_, sm_.d)) {
  if (max_weight < 1) throw StructuralError("maximal weight must be at least 1");
  if (!same_complex(contraction_.big(), g_.complex()))
    throw StructuralError("contraction's big complex differs from the bracket's complex");
}

const GradedMap& TransferState::tau(int j) const {
  if (j < 1 || j > computed()) throw StructuralError("tau component " + std::to_string(j) + " not computed");
  return tau_[j - 1];
}

const Coderivation& TransferState::coderivation(int j) const {
  if (j < 1 || j >= computed())
    throw StructuralError("coderivation component " + std::to_string(j) + " not computed");
  return d_[j - 1];
}

const GradedMap& TransferState::half_bracket_sum(int j) const {
  if (j < 2 || j > computed()) throw StructuralError("bracket sum " + std::to_string(j) + " not computed");
  return half_sums_[j - 2];
}

void TransferState::step(int j) {
  if (j != computed() + 1 || j > max_weight_)
    throw StructuralError("transfer step " + std::to_string(j) + " out of order");
  const SymCoalgebra& c = *coalgebra_;
  if (j == 1) {
    tau_.push_back(compose(contraction_.nabla(), tau_projection(c, m())));
    return;
  }
  // [τ^p, τ^q] = [τ^q, τ^p] for odd cochains, so each unordered pair counts twice
  GradedMap sum(c.words(), g_.module(), -2);
  for (int p = 1; 2 * p <= j; ++p) {
    const int q = j - p;
    GradedMap b = cup_bracket(tau(p), tau(q), c, g_, static_cast<std::size_t>(j));
    if (b.is_zero()) continue;
    sum += p == q ? b : Scalar(2) * b;
  }
  sum *= Scalar(1, 2);
  GradedMap next = compose(contraction_.h(), sum);
  if (next.is_zero()) next = GradedMap(c.words(), g_.module(), -1);
  GradedMap projected = compose(contraction_.pi(), sum);
  if (projected.is_zero()) projected = GradedMap(c.words(), m(), -2);
  tau_.push_back(std::move(next));
  d_.push_back(make_coderivation(c, suspend_values(projected, c.letters())));
  half_sums_.push_back(std::move(sum));
}

void TransferState::run() {
  while (computed() < max_weight_) step(computed() + 1);
}

GradedMap TransferState::tau_partial(int a) const {
  GradedMap out(coalgebra_->words(), g_.module(), -1);
  for (int j = 1; j <= a; ++j) out += tau(j);
  return out;
}

GradedMap TransferState::coderivation_partial(int a) const {
  GradedMap out(coalgebra_->words(), coalgebra_->words(), -1);
  for (int j = 1; j <= a; ++j) out += coderivation(j).expanded;
  return out;
}

TransferState run_transfer(const PreBracket& g, const Contraction& c, int max_weight) {
  TransferState state(g, c, max_weight);
  state.run();
  return state;
}

LInftyStructure::LInftyStructure(std::shared_ptr<const SymCoalgebra> coalgebra, GradedModule m,
                                 std::map<int, GradedMap> tables)
    : coalgebra_(std::move(coalgebra)), m_(std::move(m)), tables_(std::move(tables)) {}

const GradedMap& LInftyStructure::table(int k) const {
  auto it = tables_.find(k);
  if (it == tables_.end()) throw StructuralError("no bracket of arity " + std::to_string(k));
  return it->second;
}

namespace {

long arity_exponent(const GradedModule& m, const std::vector<std::size_t>& args) {
  long e = 0;
  const long k = static_cast<long>(args.size());
  for (long i = 1; i <= k; ++i) e += (k - i) * m.degree(args[i - 1]);
  return e;
}

}  // namespace

Vector LInftyStructure::evaluate(const std::vector<std::size_t>& args) const {
  const auto normal = coalgebra_->normalize(args);
  if (!normal) return {};
  const auto& canonical = coalgebra_->word(normal->index).letters;
  const int sign = normal->sign * parity_sign(arity_exponent(m_, args) + arity_exponent(m_, canonical));
  Vector out;
  axpy(out, Scalar(sign), table(static_cast<int>(args.size())).column(normal->index));
  return out;
}

bool LInftyStructure::trivial_above(int k) const {
  for (const auto& [arity, t] : tables_)
    if (arity > k && !t.is_zero()) return false;
  return true;
}

LInftyStructure brackets_from_coderivation(std::shared_ptr<const SymCoalgebra> coalgebra,
                                           const GradedModule& m, const Coderivation& d0,
                                           const GradedMap& perturbation) {
  const SymCoalgebra& c = *coalgebra;
  const GradedMap total = d0.expanded + perturbation;
  Report report;
  check_zero(report, "(d0+D)^2=0", 0, compose(total, total));
  if (!report.ok()) {
    const std::string what = "not a perturbation: (d0+D)^2 fails at " + report.first_failure()->witness;
    throw ValidationError(what, std::move(report));
  }
  const GradedMap values = compose(tau_projection(c, m), total);
  std::map<int, GradedMap> tables;
  for (int k = 1; k <= c.max_weight(); ++k) {
    GradedMap t(c.words(), m, -2);
    for (auto w : c.words_of_weight(static_cast<std::size_t>(k))) {
      const int sign = -parity_sign(arity_exponent(m, c.word(w).letters));
      Vector col;
      axpy(col, Scalar(sign), values.column(w));
      if (!col.empty()) t.set_column(w, std::move(col));
    }
    tables.emplace(k, std::move(t));
  }
  return LInftyStructure(std::move(coalgebra), m, std::move(tables));
}

LInftyStructure brackets(const TransferState& state) {
  return brackets_from_coderivation(state.coalgebra_ptr(), state.m(), state.d0(), state.perturbation_total());
}

ChainComplex unary_complex(const LInftyStructure& l) {
  GradedMap d(l.m(), l.m(), -1);
  for (std::size_t i = 0; i < l.m().size(); ++i) d.set_column(i, l.evaluate({i}));
  return ChainComplex(l.m(), std::move(d));
}

Coderivation coderivation_from_brackets(const LInftyStructure& l) {
  const SymCoalgebra& c = l.coalgebra();
  GradedMap q(c.words(), c.letters(), -1);
  for (int k = 2; k <= c.max_weight(); ++k)
    for (auto w : c.words_of_weight(static_cast<std::size_t>(k))) {
      Vector col;
      axpy(col, Scalar(-parity_sign(arity_exponent(l.m(), c.word(w).letters))), l.table(k).column(w));
      if (!col.empty()) q.set_column(w, std::move(col));
    }
  return make_coderivation(c, std::move(q));
}

Report verify_brackets(const LInftyStructure& l) {
  const SymCoalgebra& c = l.coalgebra();
  const ChainComplex sm = suspend(unary_complex(l));
  const GradedMap total =
      coderivation_from_letter_map(c, sm.d).expanded + coderivation_from_brackets(l).expanded;
  Report r;
  check_zero(r, "(d0+D)^2=0", 0, compose(total, total));
  return r;
}

Obstruction compute_obstruction(const TransferState& state, int a) {
  if (a < 1 || a > state.computed() || a > state.max_weight())
    throw StructuralError("obstruction stage " + std::to_string(a) + " out of range");
  const SymCoalgebra& c = state.coalgebra();
  const PreBracket& g = state.g();
  const GradedMap tau_a = state.tau_partial(a);
  GradedMap theta = -hom_differential(tau_a, state.d0().expanded, g.d());
  if (a >= 2) theta -= compose(tau_a, state.coderivation_partial(a - 1));
  theta += Scalar(1, 2) * cup_bracket(tau_a, tau_a, c, g);
  GradedMap vartheta = theta.restricted(c.weight_equals(static_cast<std::size_t>(a) + 1));
  return Obstruction{a, std::move(theta), std::move(vartheta)};
}

Report verify_stage(const TransferState& state, int a) {
  if (a < 1 || a >= state.computed())
    throw StructuralError("stage " + std::to_string(a) + " needs tau through weight " + std::to_string(a + 1));
  const SymCoalgebra& c = state.coalgebra();
  const PreBracket& g = state.g();
  const Contraction& con = state.contraction();
  const auto on_weight = c.weight_equals(static_cast<std::size_t>(a) + 1);
  const Obstruction ob = compute_obstruction(state, a);
  const GradedMap& vt = ob.vartheta;
  const GradedMap tau_m = tau_projection(c, state.m());
  const GradedMap& tau1 = state.tau(1);
  Report r;

  check_zero(r, "pi.tau[a+1]=0", a, compose(con.pi(), state.tau(a + 1)));

  GradedMap formula(c.words(), g.module(), -2);
  for (int p = 2; p <= a; ++p) formula -= compose(state.tau(p), state.coderivation(a + 1 - p).expanded);
  for (int p = 1; p <= a; ++p) formula += Scalar(1, 2) * cup_bracket(state.tau(p), state.tau(a + 1 - p), c, g);
  check_equal(r, "theta[a+1]=-sum tau.D+1/2 sum[tau,tau]", a, vt, formula.restricted(on_weight));

  check_equal(r, "h.theta[a+1]=tau[a+1]", a, compose(con.h(), vt), state.tau(a + 1));
  check_equal(r, "pi.theta[a+1]=tauM.D[a]", a, compose(con.pi(), vt),
              compose(tau_m, state.coderivation(a).expanded).restricted(on_weight));
  check_zero(r, "Theta[a+1]|F[a]=0", a, ob.theta.restricted(c.weight_at_most(static_cast<std::size_t>(a))));

  GradedMap dd(c.words(), c.words(), -2);
  for (int p = 1; p < a; ++p) dd += compose(state.coderivation(p).expanded, state.coderivation(a - p).expanded);
  const GradedMap dvt = hom_differential(vt, state.d0().expanded, g.d()).restricted(on_weight);
  check_equal(r, "D.theta[a+1]=tau1.sum D.D", a, dvt, compose(tau1, dd).restricted(on_weight));

  check_equal(r, "D.tau[a+1]=theta[a+1]-tau1.D[a]", a,
              hom_differential(state.tau(a + 1), state.d0().expanded, g.d()),
              vt - compose(tau1, state.coderivation(a).expanded));

  const GradedMap& d0 = state.d0().expanded;
  const GradedMap& da = state.coderivation(a).expanded;
  check_zero(r, "d0.D[a]+sum D.D+D[a].d0=0", a, compose(d0, da) + dd + compose(da, d0));
  return r;
}

Report verify_low_stages(const TransferState& state) {
  const SymCoalgebra& c = state.coalgebra();
  const PreBracket& g = state.g();
  const GradedMap& d0 = state.d0().expanded;
  Report r;
  if (state.computed() >= 2) {
    const Obstruction ob = compute_obstruction(state, 1);
    check_equal(r, "theta[2]=1/2[tau1,tau1]", 1, ob.vartheta,
                Scalar(1, 2) * cup_bracket(state.tau(1), state.tau(1), c, g));
    const GradedMap& d1 = state.coderivation(1).expanded;
    check_zero(r, "d0.D1+D1.d0=0", 1, compose(d0, d1) + compose(d1, d0));

    bool trivial = state.contraction().h().is_zero() &&
                   compose(state.contraction().nabla(), state.contraction().pi()) ==
                       GradedMap::identity(g.module());
    if (trivial || state.contraction().small().d.is_zero())
      check_zero(r, "D1.D1=0", 1, compose(d1, d1));
  }
  if (state.computed() >= 3) {
    const Obstruction ob = compute_obstruction(state, 2);
    const GradedMap& d1 = state.coderivation(1).expanded;
    const GradedMap& d2 = state.coderivation(2).expanded;
    const auto on3 = c.weight_equals(3);
    check_equal(r, "theta[3]=[tau1,tau2]-tau2.D1", 2, ob.vartheta,
                (cup_bracket(state.tau(1), state.tau(2), c, g) - compose(state.tau(2), d1)).restricted(on3));
    check_equal(r, "pi.theta[3]=tauM.D2", 2, compose(state.contraction().pi(), ob.vartheta),
                compose(tau_projection(c, state.m()), d2).restricted(on3));
    check_zero(r, "d0.D2+D1.D1+D2.d0=0", 2, compose(d0, d2) + compose(d1, d1) + compose(d2, d0));
  }
  return r;
}

Report verify_transfer(const TransferState& state) {
  const SymCoalgebra& c = state.coalgebra();
  const PreBracket& g = state.g();
  const Contraction& con = state.contraction();
  const GradedMap tau = state.tau_total();
  const GradedMap pert = state.perturbation_total();
  const GradedMap total = state.d0().expanded + pert;
  Report r;
  check_equal(r, "pi.tau=tauM", 0, compose(con.pi(), tau), tau_projection(c, state.m()));
  check_zero(r, "h.tau=0", 0, compose(con.h(), tau));
  check_zero(r, "(d0+D)^2=0", 0, compose(total, total));
  r.append(check_coderivation_law(c, pert, "D coderivation"));
  GradedMap master = hom_differential(tau, state.d0().expanded, g.d()) + compose(tau, pert) -
                     Scalar(1, 2) * cup_bracket(tau, tau, c, g);
  check_zero(r, "master: Dtau+tau.D=1/2[tau,tau]", 0, master);
  return r;
}

}  // namespace hpt
