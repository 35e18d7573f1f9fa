#pragma once

// Ind-objects: directed systems X_0 -> X_1 -> ... of free complexes, evaluated
// through the colimit of their homology bidegree by bidegree.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "bousfield/complexes.hpp"

namespace bousfield {

struct StabilizationPolicy {
  int cutoff = 8;
  int agreement = 2;
};

class IndComplex {
 public:
  using StageFn = std::function<FreeComplex(int)>;
  using MapFn = std::function<ChainMap(int)>;

  IndComplex() = default;
  /// map(s) must be a chain map stage(s) -> stage(s+1). A uniform system has the
  /// same stage and the same map at every s.
  IndComplex(SpecPtr spec, StageFn stage, MapFn map, bool uniform, bool constant);

  static IndComplex constant(const FreeComplex& x);
  /// X -a-> X -a-> ..., stage s internally shifted by -s*deg(a).
  static IndComplex telescope(const AlgebraElement& a, const FreeComplex& x);
  /// Stage s = fiber(a^s: X -> stage s of telescope(a, X)).
  static IndComplex fiber_to_telescope(const AlgebraElement& a, const FreeComplex& x);
  /// Stage s = cone(a^s: X -> stage s of telescope(a, X)).
  static IndComplex telescope_quotient(const AlgebraElement& a, const FreeComplex& x);

  const SpecPtr& spec() const noexcept { return spec_; }
  const FreeComplex& stage(int s) const;
  const ChainMap& map(int s) const;
  bool is_uniform() const noexcept { return uniform_; }
  bool is_constant() const noexcept { return constant_; }
  /// Some n with every n-fold composite of structure maps equal to zero, when known.
  std::optional<int> vanishing_steps() const noexcept { return vanishing_; }
  IndComplex with_vanishing(std::optional<int> n) const {
    IndComplex copy = *this;
    copy.vanishing_ = n;
    return copy;
  }

 private:
  struct Cache;

  SpecPtr spec_;
  std::shared_ptr<Cache> cache_;
  bool uniform_ = true;
  bool constant_ = true;
  std::optional<int> vanishing_;
};

IndComplex ind_sum(const IndComplex& a, const IndComplex& b);
IndComplex ind_tensor(const IndComplex& a, const IndComplex& b);
IndComplex ind_shift(const IndComplex& a, int s);
/// Applies a stage-wise functor that also acts on maps.
IndComplex ind_apply(const IndComplex& a, SpecPtr spec, const std::function<FreeComplex(const FreeComplex&)>& on_stage,
                     const std::function<ChainMap(const ChainMap&)>& on_map);

struct StabilizationReport {
  /// Per reported bidegree, the stage at which the colimit descriptor settled.
  std::map<Bidegree, int> stabilized_stage;
  std::vector<Bidegree> inconclusive;
  bool uniform = true;
};

struct IndHomology {
  HomologyTable table;
  StabilizationReport report;
};

/// Image of the columns of v modulo the column span of b, as a descriptor.
ModuleDescriptor subquotient(const ScalarMatrix& v, const ScalarMatrix& b, const CoefficientRing& ring);

IndHomology telescope_homology(const IndComplex& ind, const DegreeWindow& w, const StabilizationPolicy& policy = {});
IndHomology telescope_homology(const FreeComplex& x, const ChainMap& f, const DegreeWindow& w,
                               const StabilizationPolicy& policy = {});
Nullity ind_is_zero(const IndComplex& ind, const DegreeWindow& w, const StabilizationPolicy& policy = {});

}  // namespace bousfield
