#pragma once

#include "hpt/report.hpp"
#include "hpt/scalar.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hpt {

struct Generator {
  std::string name;
  int degree = 0;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Free graded Q-module on an ordered list of named homogeneous generators.
/// The order is canonical: it fixes every sign normalization downstream.
/// Copies share the generator table.
class GradedModule {
public:
  GradedModule();
  explicit GradedModule(std::vector<Generator> generators);

  std::size_t size() const { return impl_->generators.size(); }
  bool empty() const { return size() == 0; }
  const Generator& operator[](std::size_t i) const { return impl_->generators[i]; }
  int degree(std::size_t i) const { return impl_->generators[i].degree; }
  const std::string& name(std::size_t i) const { return impl_->generators[i].name; }
  const std::vector<Generator>& generators() const { return impl_->generators; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Like find, but throws StructuralError for unknown names.
  std::size_t index(std::string_view name) const;

  /// Degrees shifted by `shift`, names prefixed.
  GradedModule shifted(int shift, std::string_view prefix) const;

  friend bool operator==(const GradedModule& a, const GradedModule& b) {
    return a.impl_ == b.impl_ || a.impl_->generators == b.impl_->generators;
  }

private:
  struct Impl {
    std::vector<Generator> generators;
    std::unordered_map<std::string, std::size_t> lookup;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Sparse vector in the basis of some GradedModule; zero entries are never stored.
using Vector = std::map<std::size_t, Scalar>;

void axpy(Vector& y, const Scalar& a, const Vector& x);
void add_term(Vector& y, std::size_t index, const Scalar& a);
std::string format_vector(const GradedModule& module, const Vector& v);

/// Homogeneous linear map between graded modules, stored column-wise.
/// Entry (t, s) may be nonzero only if deg t = deg s + degree().
class GradedMap {
public:
  GradedMap(GradedModule source, GradedModule target, int degree);

  static GradedMap identity(const GradedModule& module);
  static GradedMap zero(const GradedModule& source, const GradedModule& target, int degree) {
    return GradedMap(source, target, degree);
  }

  const GradedModule& source() const { return source_; }
  const GradedModule& target() const { return target_; }
  int degree() const { return degree_; }

  void add_entry(std::size_t target, std::size_t source, const Scalar& value);
  void add_to_column(std::size_t source, const Scalar& a, const Vector& v);
  void set_column(std::size_t source, Vector column);

  const Vector& column(std::size_t source) const { return columns_[source]; }
  Scalar entry(std::size_t target, std::size_t source) const;
  Vector apply(const Vector& v) const;

  bool is_zero() const;
  std::size_t nonzeros() const;

  /// Columns outside `keep` are zeroed.
  GradedMap restricted(const std::function<bool(std::size_t)>& keep) const;

  GradedMap& operator+=(const GradedMap& other);
  GradedMap& operator-=(const GradedMap& other);
  GradedMap& operator*=(const Scalar& a);

  friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
  friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
  friend GradedMap operator*(const Scalar& a, GradedMap m) { return m *= a; }
  friend GradedMap operator-(GradedMap a) { return a *= Scalar(-1); }
  friend bool operator==(const GradedMap& a, const GradedMap& b);

private:
  void require_same_shape(const GradedMap& other, const char* what) const;

  GradedModule source_;
  GradedModule target_;
  int degree_;
  std::vector<Vector> columns_;
};

/// f ∘ g.
GradedMap compose(const GradedMap& f, const GradedMap& g);

/// First source generator on which the two maps differ, if any.
std::optional<std::size_t> first_difference(const GradedMap& a, const GradedMap& b);

/// Records whether lhs == rhs, with the first differing source generator as witness.
void check_equal(Report& report, const std::string& identity, int stage, const GradedMap& lhs,
                 const GradedMap& rhs);
void check_zero(Report& report, const std::string& identity, int stage, const GradedMap& map);

struct ChainComplex {
  GradedModule module;
  GradedMap d;

  /// Checks shape only (square, degree -1); d∘d = 0 is left to validate_chain_complex.
  ChainComplex(GradedModule module, GradedMap d);
  static ChainComplex with_zero_differential(const GradedModule& module);
};

/// D phi = d_tgt phi - (-1)^{|phi|} phi d_src.
GradedMap hom_differential(const GradedMap& phi, const GradedMap& d_source,
                           const GradedMap& d_target);

/// Shifts degrees by one and negates the differential, so that ds + sd = 0.
ChainComplex suspend(const ChainComplex& complex);

/// The linear map s or s^{-1} between a module and its suspension (identity
/// on indices, degree +1 or -1).
GradedMap suspension_map(const GradedModule& from, const GradedModule& to);

Report validate_chain_complex(const ChainComplex& complex);

}  // namespace hpt
