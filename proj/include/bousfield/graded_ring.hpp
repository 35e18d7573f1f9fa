#pragma once

// Truncated polynomial algebras k[x1, x2, ...]/(x_i^{n_i}) graded by deg x_i.
// The infinite-variable ring is never materialized: every basis query only
// touches the variables whose degree fits below the requested degree.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "bousfield/scalars.hpp"

namespace bousfield {

/// n_i for i = 1, 2, ...: an explicit prefix followed by a default.
struct ExponentRule {
  std::vector<int> prefix;
  int fallback = 2;

  int exponent(int i) const {
    return i >= 1 && static_cast<std::size_t>(i) <= prefix.size() ? prefix[i - 1] : fallback;
  }
  friend bool operator==(const ExponentRule&, const ExponentRule&) = default;
};

/// deg x_i = 2^i, or deg x_i = step * i.
struct DegreeRule {
  enum class Kind { kPowersOfTwo, kLinear };
  Kind kind = Kind::kPowersOfTwo;
  long step = 1;

  long degree(int i) const;
  friend bool operator==(const DegreeRule&, const DegreeRule&) = default;
};

class Monomial;

class AlgebraSpec {
 public:
  AlgebraSpec(CoefficientRing ring, ExponentRule exponents = {}, DegreeRule degrees = {});

  const CoefficientRing& ring() const noexcept { return ring_; }
  const ExponentRule& exponents() const noexcept { return exponents_; }
  const DegreeRule& degrees() const noexcept { return degrees_; }
  int exponent(int i) const { return exponents_.exponent(i); }
  long degree(int i) const { return degrees_.degree(i); }

  /// Same exponent and degree rules, different coefficients.
  AlgebraSpec with_ring(const CoefficientRing& ring) const { return AlgebraSpec(ring, exponents_, degrees_); }
  bool same_shape(const AlgebraSpec& other) const {
    return exponents_ == other.exponents_ && degrees_ == other.degrees_;
  }
  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
    return a.ring_ == b.ring_ && a.same_shape(b);
  }
  friend bool operator!=(const AlgebraSpec& a, const AlgebraSpec& b) { return !(a == b); }

  std::string describe() const;

  /// Monomials of internal degree d in lexicographic exponent order.
  const std::vector<Monomial>& basis(long d) const;
  /// Position of m inside basis(m.degree()); -1 if absent.
  long basis_index(const Monomial& m) const;

 private:
  struct Cache;

  CoefficientRing ring_;
  ExponentRule exponents_;
  DegreeRule degrees_;
  std::shared_ptr<Cache> cache_;
};

using SpecPtr = std::shared_ptr<const AlgebraSpec>;

SpecPtr make_spec(const CoefficientRing& ring, ExponentRule exponents = {}, DegreeRule degrees = {});

class Monomial {
 public:
  using Term = std::pair<int, int>;  // (variable index >= 1, exponent >= 1)

  Monomial() = default;
  /// Terms in any order; zero exponents are dropped.
  explicit Monomial(std::vector<Term> terms);
  static Monomial variable(int i, int e = 1) { return Monomial({{i, e}}); }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_unit() const noexcept { return terms_.empty(); }
  int exponent_of(int i) const;
  long degree(const AlgebraSpec& spec) const;
  bool legal(const AlgebraSpec& spec) const;

  /// Product ignoring truncation.
  Monomial times(const Monomial& other) const;

  std::string to_string() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  /// Lexicographic on dense exponent vectors (e_1, e_2, ...).
  friend bool operator<(const Monomial& a, const Monomial& b);

 private:
  std::vector<Term> terms_;
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(SpecPtr spec) : spec_(std::move(spec)) {}

  static AlgebraElement zero(SpecPtr spec) { return AlgebraElement(std::move(spec)); }
  static AlgebraElement one(SpecPtr spec);
  static AlgebraElement constant(SpecPtr spec, const Scalar& s);
  static AlgebraElement from_int(SpecPtr spec, long v);
  static AlgebraElement monomial(SpecPtr spec, const Monomial& m, const Scalar& s);
  static AlgebraElement variable(SpecPtr spec, int i);

  const SpecPtr& spec() const noexcept { return spec_; }
  const std::map<Monomial, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_homogeneous() const;
  /// Degree of the first term; meaningful for nonzero homogeneous elements.
  long degree() const;
  /// Coefficient of m (zero if absent).
  Scalar coefficient(const Monomial& m) const;

  /// Adds s*m in place; drops the term if it cancels or m is truncated.
  void accumulate(const Monomial& m, const Scalar& s);

  std::string to_string() const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

 private:
  SpecPtr spec_;
  std::map<Monomial, Scalar> terms_;
};

void require_same_spec(const SpecPtr& a, const SpecPtr& b);

AlgebraElement algebra_add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement algebra_sub(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement algebra_neg(const AlgebraElement& a);
AlgebraElement algebra_scale(const AlgebraElement& a, const Scalar& s);
AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement algebra_pow(const AlgebraElement& a, unsigned e);
/// Reinterprets the coefficients in another spec of the same shape via f.
template <typename F>
AlgebraElement algebra_map_coefficients(const AlgebraElement& a, const SpecPtr& target, F&& f) {
  AlgebraElement out(target);
  for (const auto& [m, s] : a.terms()) out.accumulate(m, f(s));
  return out;
}

/// Parses sums of products of integers, fractions n/d, variables xN and
/// parenthesized subexpressions, with ^ for powers. Throws ParseError.
AlgebraElement parse_element(const SpecPtr& spec, const std::string& text);

std::vector<Monomial> monomial_basis(const AlgebraSpec& spec, long d);
int required_variables(const AlgebraSpec& spec, long window_hi, long min_gen_degree);

}  // namespace bousfield
