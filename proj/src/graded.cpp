#include "hpt/graded.hpp"

#include <sstream>

namespace hpt {

GradedModule::GradedModule() : impl_(std::make_shared<const Impl>()) {}

GradedModule::GradedModule(std::vector<Generator> generators) {
  Impl impl;
  impl.generators = std::move(generators);
  for (std::size_t i = 0; i < impl.generators.size(); ++i) {
    if (!impl.lookup.emplace(impl.generators[i].name, i).second)
      throw StructuralError("duplicate generator name '" + impl.generators[i].name + "'");
  }
  impl_ = std::make_shared<const Impl>(std::move(impl));
}

std::optional<std::size_t> GradedModule::find(std::string_view name) const {
  auto it = impl_->lookup.find(std::string(name));
  if (it == impl_->lookup.end()) return std::nullopt;
  return it->second;
}

std::size_t GradedModule::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw StructuralError("unknown generator '" + std::string(name) + "'");
}

GradedModule GradedModule::shifted(int shift, std::string_view prefix) const {
  std::vector<Generator> gens;
  gens.reserve(size());
  for (const auto& g : generators()) gens.push_back({std::string(prefix) + g.name, g.degree + shift});
  return GradedModule(std::move(gens));
}

void add_term(Vector& y, std::size_t index, const Scalar& a) {
  if (a == 0) return;
  auto [it, inserted] = y.try_emplace(index, a);
  if (!inserted) {
    it->second += a;
    if (it->second == 0) y.erase(it);
  }
}

void axpy(Vector& y, const Scalar& a, const Vector& x) {
  if (a == 0) return;
  for (const auto& [i, v] : x) add_term(y, i, a * v);
}

std::string format_vector(const GradedModule& module, const Vector& v) {
  if (v.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [i, c] : v) {
    if (!first) out << " + ";
    first = false;
    out << format_scalar(c) << "*" << module.name(i);
  }
  return out.str();
}

GradedMap::GradedMap(GradedModule source, GradedModule target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree),
      columns_(source_.size()) {}

GradedMap GradedMap::identity(const GradedModule& module) {
  GradedMap id(module, module, 0);
  for (std::size_t i = 0; i < module.size(); ++i) id.columns_[i].emplace(i, Scalar(1));
  return id;
}

void GradedMap::add_entry(std::size_t target, std::size_t source, const Scalar& value) {
  if (value == 0) return;
  if (target >= target_.size() || source >= source_.size())
    throw StructuralError("map entry index out of range");
  if (target_.degree(target) != source_.degree(source) + degree_)
    throw StructuralError("entry " + target_.name(target) + " <- " + source_.name(source) +
                          " violates homogeneity of degree " + std::to_string(degree_));
  add_term(columns_[source], target, value);
}

void GradedMap::add_to_column(std::size_t source, const Scalar& a, const Vector& v) {
  for (const auto& [t, c] : v) add_entry(t, source, a * c);
}

void GradedMap::set_column(std::size_t source, Vector column) {
  columns_[source].clear();
  for (const auto& [t, c] : column) add_entry(t, source, c);
}

Scalar GradedMap::entry(std::size_t target, std::size_t source) const {
  const auto& col = columns_[source];
  auto it = col.find(target);
  return it == col.end() ? Scalar(0) : it->second;
}

Vector GradedMap::apply(const Vector& v) const {
  Vector out;
  for (const auto& [s, c] : v) axpy(out, c, columns_[s]);
  return out;
}

bool GradedMap::is_zero() const {
  for (const auto& col : columns_)
    if (!col.empty()) return false;
  return true;
}

std::size_t GradedMap::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

GradedMap GradedMap::restricted(const std::function<bool(std::size_t)>& keep) const {
  GradedMap out(source_, target_, degree_);
  for (std::size_t s = 0; s < columns_.size(); ++s)
    if (keep(s)) out.columns_[s] = columns_[s];
  return out;
}

void GradedMap::require_same_shape(const GradedMap& other, const char* what) const {
  if (!(source_ == other.source_) || !(target_ == other.target_))
    throw StructuralError(std::string(what) + ": module mismatch");
  if (degree_ != other.degree_ && !is_zero() && !other.is_zero())
    throw StructuralError(std::string(what) + ": degree mismatch (" + std::to_string(degree_) +
                          " vs " + std::to_string(other.degree_) + ")");
}

GradedMap& GradedMap::operator+=(const GradedMap& other) {
  require_same_shape(other, "sum");
  if (is_zero()) degree_ = other.degree_;
  for (std::size_t s = 0; s < columns_.size(); ++s) axpy(columns_[s], Scalar(1), other.columns_[s]);
  return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& other) {
  require_same_shape(other, "difference");
  if (is_zero()) degree_ = other.degree_;
  for (std::size_t s = 0; s < columns_.size(); ++s) axpy(columns_[s], Scalar(-1), other.columns_[s]);
  return *this;
}

GradedMap& GradedMap::operator*=(const Scalar& a) {
  if (a == 0) {
    for (auto& col : columns_) col.clear();
    return *this;
  }
  for (auto& col : columns_)
    for (auto& [t, c] : col) c *= a;
  return *this;
}

bool operator==(const GradedMap& a, const GradedMap& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
  return a.columns_ == b.columns_;
}

GradedMap compose(const GradedMap& f, const GradedMap& g) {
  if (!(f.source() == g.target()))
    throw StructuralError("compose: source of outer map does not match target of inner map");
  GradedMap out(g.source(), f.target(), f.degree() + g.degree());
  for (std::size_t s = 0; s < g.source().size(); ++s) {
    Vector col;
    for (const auto& [k, c] : g.column(s)) axpy(col, c, f.column(k));
    if (!col.empty()) out.set_column(s, std::move(col));
  }
  return out;
}

std::optional<std::size_t> first_difference(const GradedMap& a, const GradedMap& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw StructuralError("comparison of maps between different modules");
  for (std::size_t s = 0; s < a.source().size(); ++s)
    if (a.column(s) != b.column(s)) return s;
  return std::nullopt;
}

void check_equal(Report& report, const std::string& identity, int stage, const GradedMap& lhs,
                 const GradedMap& rhs) {
  if (auto s = first_difference(lhs, rhs)) {
    report.fail(identity, lhs.source().name(*s), stage);
  } else {
    report.pass(identity, stage);
  }
}

void check_zero(Report& report, const std::string& identity, int stage, const GradedMap& map) {
  for (std::size_t s = 0; s < map.source().size(); ++s) {
    if (!map.column(s).empty()) {
      report.fail(identity, map.source().name(s), stage);
      return;
    }
  }
  report.pass(identity, stage);
}

ChainComplex::ChainComplex(GradedModule m, GradedMap differential)
    : module(std::move(m)), d(std::move(differential)) {
  if (!(d.source() == module) || !(d.target() == module))
    throw StructuralError("differential must be an endomorphism of the complex's module");
  if (d.degree() != -1) throw StructuralError("differential must have degree -1");
}

ChainComplex ChainComplex::with_zero_differential(const GradedModule& module) {
  return ChainComplex(module, GradedMap(module, module, -1));
}

GradedMap hom_differential(const GradedMap& phi, const GradedMap& d_source,
                           const GradedMap& d_target) {
  if (d_source.degree() != -1 || d_target.degree() != -1)
    throw StructuralError("hom_differential: differentials must have degree -1");
  GradedMap out = compose(d_target, phi);
  GradedMap right = compose(phi, d_source);
  if (phi.degree() % 2 == 0) {
    out -= right;
  } else {
    out += right;
  }
  return out;
}

ChainComplex suspend(const ChainComplex& complex) {
  GradedModule shifted = complex.module.shifted(1, "s");
  GradedMap d(shifted, shifted, -1);
  for (std::size_t s = 0; s < shifted.size(); ++s) d.add_to_column(s, Scalar(-1), complex.d.column(s));
  return ChainComplex(shifted, std::move(d));
}

GradedMap suspension_map(const GradedModule& from, const GradedModule& to) {
  if (from.size() != to.size()) throw StructuralError("suspension_map: size mismatch");
  if (from.empty()) return GradedMap(from, to, 1);
  const int shift = to.degree(0) - from.degree(0);
  GradedMap out(from, to, shift);
  for (std::size_t i = 0; i < from.size(); ++i) out.add_entry(i, i, Scalar(1));
  return out;
}

Report validate_chain_complex(const ChainComplex& complex) {
  Report report;
  check_zero(report, "d.d=0", 0, compose(complex.d, complex.d));
  return report;
}

}  // namespace hpt
