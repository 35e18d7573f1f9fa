#pragma once

// Extension and restriction of scalars along the mod-p projection g and the
// rationalization h of the p-local truncated algebra.

#include <vector>

#include "bousfield/ind_complex.hpp"
#include "bousfield/serialize.hpp"

namespace bousfield {

class RingMap {
 public:
  enum class Kind { kG, kH, kGeneric };

  RingMap() = default;

  /// Λ_{Z_(p)} -> Λ_{F_p}. Throws NonPLocalInput unless source is p-local.
  static RingMap g(const SpecPtr& source);
  /// Λ_{Z_(p)} -> Λ_Q. Throws NonPLocalInput unless source is p-local.
  static RingMap h(const SpecPtr& source);
  /// Coefficients are carried by their rational value; x_i goes to images[i-1],
  /// and variables past the list go to the same variable of the target.
  static RingMap generic(SpecPtr source, SpecPtr target, std::vector<AlgebraElement> images);

  Kind kind() const noexcept { return kind_; }
  const SpecPtr& source() const noexcept { return source_; }
  const SpecPtr& target() const noexcept { return target_; }
  std::string name() const;

  AlgebraElement apply(const AlgebraElement& a) const;

 private:
  Kind kind_ = Kind::kG;
  SpecPtr source_;
  SpecPtr target_;
  std::vector<AlgebraElement> images_;
};

Json ring_map_to_json(const RingMap& f);
/// {"map": "G"|"H", "prime": p, ...}; exponent and degree rules come from `shape`.
RingMap ring_map_from_json(const Json& j, const SpecPtr& shape);

/// Entrywise image of a free complex; this is the derived extension of scalars.
FreeComplex pushforward(const RingMap& f, const FreeComplex& x);
ChainMap pushforward(const RingMap& f, const ChainMap& phi);

/// Free p-local model of the restriction of an F_p-complex: chain c holds a lift
/// of X_c followed by a lift of X_{c-1}, with differential
/// [[d, p], [-d²/p, -d]] on integer lifts d in [0, p).
FreeComplex restrict_g(const FreeComplex& x);

/// Rescales chain c of a rational complex by p^{e_c} so every coefficient is p-local.
FreeComplex p_local_lattice(const FreeComplex& y, std::uint32_t p);
/// The restriction of a rational complex as the telescope of p on its lattice.
IndComplex restrict_h(const FreeComplex& y, std::uint32_t p);

/// Homology of A ∧ h^•Y computed as h_•A ∧ Y over Λ_Q.
HomologyTable mixed_tensor(const FreeComplex& a, const FreeComplex& y, const DegreeWindow& w);

struct ProjectionSides {
  HomologyTable left;   // f^•(f_•A ∧ B)
  HomologyTable right;  // A ∧ f^•B
  bool inconclusive = false;
  bool agree() const { return !inconclusive && left == right; }
};

ProjectionSides projection_formula_sides(const RingMap& f, const FreeComplex& a, const FreeComplex& b,
                                         const DegreeWindow& w, const StabilizationPolicy& policy = {});
bool projection_formula_check(const RingMap& f, const FreeComplex& a, const FreeComplex& b, const DegreeWindow& w,
                              const StabilizationPolicy& policy = {});

}  // namespace bousfield
