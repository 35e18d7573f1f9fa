#pragma once

// Construction expressions for catalog objects, e.g. "cone(p, unit)" or
// "tensor(telescope(p), restrict_g(unit_Fp))".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bousfield/ind_complex.hpp"

namespace bousfield {

enum class Home { kZp, kFp, kQ };

const char* home_name(Home h);
/// Accepts "Zp", "Fp", "Q"; throws ParseError.
Home home_from_name(const std::string& name);

/// The three coefficient versions of one truncated algebra.
struct Homes {
  std::uint32_t prime = 0;
  SpecPtr zp, fp, q;

  /// Throws NonPLocalInput unless `shape` is p-local.
  static Homes from(const SpecPtr& shape);
  static Homes standard(std::uint32_t p);
  const SpecPtr& spec(Home h) const;
};

struct Expr {
  std::string head;            // operator or constant name
  std::string element;         // element argument of cone/telescope forms
  std::optional<long> number;  // integer argument of shift forms
  std::vector<Expr> args;

  /// Canonical text; parse(to_string()) reproduces the tree.
  std::string to_string() const;
};

/// A missing object argument of cone/telescope forms defaults to unit.
/// Grammar: constants zero, unit (with _Fp/_Q variants); shift(n, E),
/// internal_shift(k, E), cone(a[, E]), telescope(a[, E]), fiber_telescope(a[, E]),
/// quotient_telescope(a[, E]), sum(E, E), tensor(E, E), restrict_g(E),
/// restrict_h(E), push_g(E), push_h(E). Throws ParseError.
Expr parse_expression(const std::string& text);

struct Value {
  Home home = Home::kZp;
  IndComplex ind;
  /// Set when the object is a single free complex.
  std::optional<FreeComplex> free;

  bool is_free() const noexcept { return free.has_value(); }
};

Value make_value(Home home, const FreeComplex& x);
Value make_value(Home home, const IndComplex& x);

/// Throws EvaluationError for ill-typed expressions.
Value evaluate(const Expr& e, const Homes& homes);
Value evaluate(const std::string& text, const Homes& homes);

/// Cone of a on every stage, with the induced structure maps.
IndComplex ind_cone(const AlgebraElement& a, const IndComplex& x);

HomologyTable value_homology(const Value& v, const DegreeWindow& w, const StabilizationPolicy& policy = {});
Nullity value_is_zero(const Value& v, const DegreeWindow& w, const StabilizationPolicy& policy = {});

}  // namespace bousfield
