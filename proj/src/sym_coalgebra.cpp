#include "hpt/sym_coalgebra.hpp"

#include <algorithm>
#include <numeric>

namespace hpt {

namespace {

void enumerate_from(const GradedModule& letters, std::size_t weight, std::size_t start,
                    std::vector<std::size_t>& current, std::vector<Word>& out) {
  if (current.size() == weight) {
    int degree = 0;
    for (auto l : current) degree += letters.degree(l);
    out.push_back({current, degree});
    return;
  }
  for (std::size_t l = start; l < letters.size(); ++l) {
    const bool odd = letters.degree(l) % 2 != 0;
    current.push_back(l);
    enumerate_from(letters, weight, odd ? l + 1 : l, current, out);
    current.pop_back();
  }
}

std::string word_name(const GradedModule& letters, const Word& w) {
  if (w.letters.empty()) return "1";
  std::string name;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) name += '.';
    name += letters.name(w.letters[i]);
  }
  return name;
}

void add_tensor(TensorVector& t, std::size_t l, std::size_t r, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = t.try_emplace({l, r}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

Scalar factorial(std::size_t n) {
  Scalar f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<long>(i);
  return f;
}

}  // namespace

std::vector<Word> enumerate_words(const GradedModule& letters, int max_weight) {
  if (max_weight < 0) throw StructuralError("maximal weight must be non-negative");
  std::vector<Word> out;
  std::vector<std::size_t> current;
  for (int w = 0; w <= max_weight; ++w) enumerate_from(letters, static_cast<std::size_t>(w), 0, current, out);
  return out;
}

SymCoalgebra::SymCoalgebra(GradedModule letters, int max_weight)
    : letters_(std::move(letters)), max_weight_(max_weight) {
  if (max_weight_ > 30) throw StructuralError("maximal weight too large");
  basis_ = enumerate_words(letters_, max_weight_);
  by_weight_.resize(static_cast<std::size_t>(max_weight_) + 1);
  std::vector<Generator> gens;
  gens.reserve(basis_.size());
  letter_words_.assign(letters_.size(), 0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    lookup_.emplace(basis_[i].letters, i);
    by_weight_[basis_[i].weight()].push_back(i);
    if (basis_[i].weight() == 1) letter_words_[basis_[i].letters[0]] = i;
    gens.push_back({word_name(letters_, basis_[i]), basis_[i].degree});
  }
  words_ = GradedModule(std::move(gens));
}

const std::vector<std::size_t>& SymCoalgebra::words_of_weight(std::size_t weight) const {
  static const std::vector<std::size_t> none;
  return weight < by_weight_.size() ? by_weight_[weight] : none;
}

std::optional<std::size_t> SymCoalgebra::find(const std::vector<std::size_t>& sorted_letters) const {
  auto it = lookup_.find(sorted_letters);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int SymCoalgebra::sign_of_subset(const Word& w, unsigned mask) const {
  // moving the selected positions to the front, keeping relative order
  long exponent = 0;
  long passed_degree = 0;  // total degree of unselected letters seen so far
  for (std::size_t i = 0; i < w.weight(); ++i) {
    const long deg = letters_.degree(w.letters[i]);
    if ((mask >> i) & 1u) {
      exponent += deg * passed_degree;
    } else {
      passed_degree += deg;
    }
  }
  return parity_sign(exponent);
}

std::optional<SignedIndex> SymCoalgebra::normalize(std::span<const std::size_t> sequence) const {
  if (sequence.size() > static_cast<std::size_t>(max_weight_))
    throw StructuralError("word weight " + std::to_string(sequence.size()) +
                          " exceeds truncation " + std::to_string(max_weight_));
  std::vector<std::size_t> seq(sequence.begin(), sequence.end());
  long exponent = 0;
  // insertion sort, tracking Koszul signs of adjacent transpositions
  for (std::size_t i = 1; i < seq.size(); ++i) {
    for (std::size_t j = i; j > 0 && seq[j - 1] > seq[j]; --j) {
      exponent += static_cast<long>(letters_.degree(seq[j - 1])) * letters_.degree(seq[j]);
      std::swap(seq[j - 1], seq[j]);
    }
  }
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i] == seq[i - 1] && letters_.degree(seq[i]) % 2 != 0) return std::nullopt;
  return SignedIndex{parity_sign(exponent), lookup_.at(seq)};
}

Vector SymCoalgebra::multiply(const Vector& a, const Vector& b) const {
  Vector out;
  std::vector<std::size_t> seq;
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) {
      seq = basis_[i].letters;
      seq.insert(seq.end(), basis_[j].letters.begin(), basis_[j].letters.end());
      if (auto s = normalize(seq)) add_term(out, s->index, Scalar(s->sign) * x * y);
    }
  }
  return out;
}

Vector SymCoalgebra::multiply_letters(const std::vector<Vector>& factors) const {
  Vector out;
  std::vector<std::size_t> seq(factors.size());
  // odometer over the supports of the factors
  std::vector<Vector::const_iterator> it(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].empty()) return out;
    it[k] = factors[k].begin();
  }
  while (true) {
    Scalar coeff = 1;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      seq[k] = it[k]->first;
      coeff *= it[k]->second;
    }
    if (auto s = normalize(seq)) add_term(out, s->index, Scalar(s->sign) * coeff);
    std::size_t k = factors.size();
    while (k > 0) {
      --k;
      if (++it[k] != factors[k].end()) break;
      it[k] = factors[k].begin();
      if (k == 0) return out;
    }
    if (factors.empty()) return out;
  }
}

TensorVector SymCoalgebra::reduced_diagonal(std::size_t w, std::size_t p, std::size_t q) const {
  if (p == 0 || q == 0 || p + q != weight(w))
    throw StructuralError("reduced diagonal needs p, q >= 1 with p + q = weight");
  TensorVector out;
  for_each_unshuffle(w, p, [&](int sign, std::size_t l, std::size_t r) { add_tensor(out, l, r, Scalar(sign)); });
  return out;
}

TensorVector SymCoalgebra::diagonal(std::size_t w) const {
  TensorVector out;
  for (std::size_t p = 0; p <= weight(w); ++p)
    for_each_unshuffle(w, p, [&](int sign, std::size_t l, std::size_t r) { add_tensor(out, l, r, Scalar(sign)); });
  return out;
}

TensorVector SymCoalgebra::diagonal(const Vector& v) const {
  TensorVector out;
  for (const auto& [w, c] : v)
    for (const auto& [key, x] : diagonal(w)) add_tensor(out, key.first, key.second, c * x);
  return out;
}

GradedMap tau_projection(const SymCoalgebra& c, const GradedModule& target) {
  const auto& letters = c.letters();
  if (target.size() != letters.size()) throw StructuralError("tau_projection: size mismatch");
  GradedMap out(c.words(), target, -1);
  for (std::size_t l = 0; l < letters.size(); ++l) out.add_entry(l, c.letter_word(l), Scalar(1));
  return out;
}

GradedMap cup_bracket(const GradedMap& a, const GradedMap& b, const SymCoalgebra& c,
                      const PreBracket& g, std::optional<std::size_t> only_weight) {
  if (!(a.source() == c.words()) || !(b.source() == c.words()))
    throw StructuralError("cup_bracket: cochains must be defined on the coalgebra");
  if (!(a.target() == g.module()) || !(b.target() == g.module()))
    throw StructuralError("cup_bracket: cochains must take values in the bracket's module");
  GradedMap out(c.words(), g.module(), a.degree() + b.degree());
  if (!a.column(c.unit()).empty() || !b.column(c.unit()).empty())
    throw StructuralError("cup_bracket: cochains must vanish on the unit");
  for (std::size_t w = 0; w < c.size(); ++w) {
    const std::size_t n = c.weight(w);
    if (n < 2 || (only_weight && n != *only_weight)) continue;
    Vector col;
    for (std::size_t p = 1; p < n; ++p) {
      c.for_each_unshuffle(w, p, [&](int sign, std::size_t u, std::size_t v) {
        const Vector& au = a.column(u);
        if (au.empty()) return;
        const Vector& bv = b.column(v);
        if (bv.empty()) return;
        const int s = sign * koszul_sign(b.degree(), c.degree(u));
        axpy(col, Scalar(s), g.bracket(au, bv));
      });
    }
    if (!col.empty()) out.set_column(w, std::move(col));
  }
  return out;
}

Vector expand_coderivation(const SymCoalgebra& c, const GradedMap& q, std::size_t w) {
  Vector out;
  std::vector<std::size_t> seq;
  const std::size_t n = c.weight(w);
  for (std::size_t p = 1; p <= n; ++p) {
    c.for_each_unshuffle(w, p, [&](int sign, std::size_t u, std::size_t v) {
      const Vector& qu = q.column(u);
      if (qu.empty()) return;
      for (const auto& [letter, x] : qu) {
        seq.clear();
        seq.push_back(letter);
        const auto& rest = c.word(v).letters;
        seq.insert(seq.end(), rest.begin(), rest.end());
        if (auto s = c.normalize(seq)) add_term(out, s->index, Scalar(sign * s->sign) * x);
      }
    });
  }
  return out;
}

Coderivation make_coderivation(const SymCoalgebra& c, GradedMap corestriction) {
  if (!(corestriction.source() == c.words()) || !(corestriction.target() == c.letters()))
    throw StructuralError("coderivation corestriction must map words to letters");
  if (!corestriction.column(c.unit()).empty())
    throw StructuralError("coderivation corestriction must vanish on the unit");
  GradedMap expanded(c.words(), c.words(), corestriction.degree());
  for (std::size_t w = 0; w < c.size(); ++w) {
    Vector col = expand_coderivation(c, corestriction, w);
    if (!col.empty()) expanded.set_column(w, std::move(col));
  }
  return Coderivation{std::move(corestriction), std::move(expanded)};
}

Coderivation coderivation_from_letter_map(const SymCoalgebra& c, const GradedMap& f) {
  if (!(f.source() == c.letters()) || !(f.target() == c.letters()))
    throw StructuralError("letter map must be an endomorphism of the letters");
  GradedMap q(c.words(), c.letters(), f.degree());
  for (std::size_t l = 0; l < c.letters().size(); ++l) q.set_column(c.letter_word(l), f.column(l));
  return make_coderivation(c, std::move(q));
}

namespace {

// Calls f(blocks) for each set partition of {0..n-1}; blocks ordered by their minima.
template <class F>
void for_each_set_partition(std::size_t n, F&& f) {
  std::vector<std::size_t> label(n, 0);
  std::vector<std::vector<std::size_t>> blocks;
  auto recurse = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      blocks.assign(used, {});
      for (std::size_t k = 0; k < n; ++k) blocks[label[k]].push_back(k);
      f(static_cast<const std::vector<std::vector<std::size_t>>&>(blocks), label);
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      label[i] = b;
      self(self, i + 1, b == used ? used + 1 : used);
    }
  };
  if (n == 0) return;
  recurse(recurse, 0, 0);
}

}  // namespace

GradedMap coalgebra_morphism(const SymCoalgebra& source, const SymCoalgebra& target,
                             const GradedMap& corestriction) {
  if (!(corestriction.source() == source.words()) || !(corestriction.target() == target.letters()))
    throw StructuralError("coalgebra morphism corestriction must map words to target letters");
  if (corestriction.degree() != 0 && !corestriction.is_zero())
    throw StructuralError("coalgebra morphism corestriction must have degree 0");
  if (!corestriction.column(source.unit()).empty())
    throw StructuralError("coalgebra morphism corestriction must vanish on the unit");
  if (target.max_weight() < source.max_weight())
    throw StructuralError("target truncation below source truncation");

  GradedMap out(source.words(), target.words(), 0);
  out.add_entry(target.unit(), source.unit(), Scalar(1));
  std::vector<Vector> factors;
  std::vector<std::size_t> block_letters;
  for (std::size_t w = 1; w < source.size(); ++w) {
    const Word& word = source.word(w);
    const std::size_t n = word.weight();
    Vector col;
    for_each_set_partition(n, [&](const std::vector<std::vector<std::size_t>>& blocks,
                                  const std::vector<std::size_t>& label) {
      factors.clear();
      for (const auto& block : blocks) {
        block_letters.clear();
        for (auto pos : block) block_letters.push_back(word.letters[pos]);
        const Vector& value = corestriction.column(*source.find(block_letters));
        if (value.empty()) return;
        factors.push_back(value);
      }
      long exponent = 0;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
          if (label[q] < label[p])
            exponent += static_cast<long>(source.letters().degree(word.letters[p])) *
                        source.letters().degree(word.letters[q]);
      axpy(col, Scalar(parity_sign(exponent)), target.multiply_letters(factors));
    });
    if (!col.empty()) out.set_column(w, std::move(col));
  }
  return out;
}

GradedMap symmetric_power(const SymCoalgebra& source, const SymCoalgebra& target,
                          const GradedMap& letter_map) {
  if (!(letter_map.source() == source.letters()) || !(letter_map.target() == target.letters()))
    throw StructuralError("symmetric_power: letter map has wrong modules");
  GradedMap q(source.words(), target.letters(), letter_map.degree());
  for (std::size_t l = 0; l < source.letters().size(); ++l)
    q.set_column(source.letter_word(l), letter_map.column(l));
  return coalgebra_morphism(source, target, q);
}

GradedMap symmetrized_homotopy(const SymCoalgebra& c, const GradedMap& nabla_pi, const GradedMap& h) {
  const auto& letters = c.letters();
  if (!(nabla_pi.source() == letters) || !(nabla_pi.target() == letters) || !(h.source() == letters) ||
      !(h.target() == letters))
    throw StructuralError("symmetrized_homotopy: maps must be endomorphisms of the letters");
  GradedMap out(c.words(), c.words(), 1);
  std::vector<Vector> factors;
  std::vector<std::size_t> order;
  for (std::size_t w = 1; w < c.size(); ++w) {
    const Word& word = c.word(w);
    const std::size_t n = word.weight();
    Vector col;
    for (std::size_t k = 0; k < n; ++k) {
      const Vector& hk = h.column(word.letters[k]);
      if (hk.empty()) continue;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if ((mask >> k) & 1u) continue;
        const std::size_t a = static_cast<std::size_t>(__builtin_popcount(mask));
        order.clear();
        factors.clear();
        long h_passes = 0;
        for (std::size_t i = 0; i < n; ++i)
          if ((mask >> i) & 1u) {
            order.push_back(i);
            factors.push_back(nabla_pi.column(word.letters[i]));
            h_passes += letters.degree(word.letters[i]);
          }
        order.push_back(k);
        factors.push_back(hk);
        for (std::size_t i = 0; i < n; ++i)
          if (i != k && !((mask >> i) & 1u)) {
            order.push_back(i);
            factors.push_back(Vector{{word.letters[i], Scalar(1)}});
          }
        long exponent = h_passes * h.degree();
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = x + 1; y < n; ++y)
            if (order[x] > order[y])
              exponent += static_cast<long>(letters.degree(word.letters[order[x]])) *
                          letters.degree(word.letters[order[y]]);
        const Scalar weight_factor = factorial(a) * factorial(n - 1 - a) / factorial(n);
        axpy(col, Scalar(parity_sign(exponent)) * weight_factor, c.multiply_letters(factors));
      }
    }
    if (!col.empty()) out.set_column(w, std::move(col));
  }
  return out;
}

Report check_coderivation_law(const SymCoalgebra& c, const GradedMap& op, const std::string& identity) {
  Report report;
  for (std::size_t w = 0; w < c.size(); ++w) {
    const TensorVector lhs = c.diagonal(op.column(w));
    TensorVector rhs;
    for (const auto& [key, x] : c.diagonal(w)) {
      const auto [u, v] = key;
      for (const auto& [du, y] : op.column(u)) add_tensor(rhs, du, v, x * y);
      const int s = koszul_sign(op.degree(), c.degree(u));
      for (const auto& [dv, y] : op.column(v)) add_tensor(rhs, u, dv, Scalar(s) * x * y);
    }
    if (lhs != rhs) {
      report.fail(identity, c.words().name(w));
      return report;
    }
  }
  report.pass(identity);
  return report;
}

Report check_coalgebra_morphism(const SymCoalgebra& source, const SymCoalgebra& target,
                                const GradedMap& morphism, const std::string& identity) {
  Report report;
  for (std::size_t w = 0; w < source.size(); ++w) {
    const TensorVector lhs = target.diagonal(morphism.column(w));
    TensorVector rhs;
    for (const auto& [key, x] : source.diagonal(w)) {
      for (const auto& [fu, y] : morphism.column(key.first))
        for (const auto& [fv, z] : morphism.column(key.second)) add_tensor(rhs, fu, fv, x * y * z);
    }
    if (lhs != rhs) {
      report.fail(identity, source.words().name(w));
      return report;
    }
  }
  report.pass(identity);
  return report;
}

}  // namespace hpt
