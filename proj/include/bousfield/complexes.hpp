#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bousfield/graded_ring.hpp"
#include "bousfield/sparse.hpp"

namespace bousfield {

using AlgebraMatrix = SparseMatrix<AlgebraElement>;

/// A bounded complex of free bigraded Lambda-modules. generators(c) lists the
/// internal degrees of the basis at chain degree c; differential(c) maps
/// chain c to chain c-1 (rows index targets, columns index sources).
class FreeComplex {
 public:
  FreeComplex() = default;
  /// Validates homogeneity and d∘d = 0; throws InvalidComplex.
  FreeComplex(SpecPtr spec, std::map<int, std::vector<long>> generators, std::map<int, AlgebraMatrix> differentials);

  static FreeComplex zero(SpecPtr spec) { return FreeComplex(std::move(spec), {}, {}); }
  /// Lambda concentrated in bidegree (0, internal_degree).
  static FreeComplex unit(SpecPtr spec, long internal_degree = 0);

  const SpecPtr& spec() const noexcept { return spec_; }
  const std::map<int, std::vector<long>>& generator_map() const noexcept { return generators_; }
  const std::vector<long>& generators(int c) const;
  std::size_t rank(int c) const { return generators(c).size(); }
  /// Zero matrix of the right shape when no entries are stored.
  AlgebraMatrix differential(int c) const;
  const std::map<int, AlgebraMatrix>& differential_map() const noexcept { return differentials_; }
  bool has_no_generators() const noexcept { return generators_.empty(); }
  int min_chain() const;
  int max_chain() const;
  long min_generator_degree() const;

  friend bool operator==(const FreeComplex& a, const FreeComplex& b);

 private:
  SpecPtr spec_;
  std::map<int, std::vector<long>> generators_;
  std::map<int, AlgebraMatrix> differentials_;
};

/// A degree-preserving chain map; component(c) is |target_c| x |source_c|.
class ChainMap {
 public:
  ChainMap() = default;
  /// Validates homogeneity and commutation; throws InvalidChainMap.
  ChainMap(FreeComplex source, FreeComplex target, std::map<int, AlgebraMatrix> components);

  const FreeComplex& source() const noexcept { return source_; }
  const FreeComplex& target() const noexcept { return target_; }
  AlgebraMatrix component(int c) const;
  const std::map<int, AlgebraMatrix>& component_map() const noexcept { return components_; }

 private:
  FreeComplex source_;
  FreeComplex target_;
  std::map<int, AlgebraMatrix> components_;
};

AlgebraMatrix matrix_product(const AlgebraMatrix& a, const AlgebraMatrix& b, const SpecPtr& spec);
AlgebraMatrix matrix_sum(const AlgebraMatrix& a, const AlgebraMatrix& b, const SpecPtr& spec);
AlgebraMatrix matrix_scale(const AlgebraMatrix& a, const AlgebraElement& s);
AlgebraMatrix identity_matrix(const SpecPtr& spec, std::size_t n);

FreeComplex shift(const FreeComplex& x, int s);
/// Adds k to every generator's internal degree.
FreeComplex internal_shift(const FreeComplex& x, long k);
FreeComplex cone(const ChainMap& phi);
FreeComplex fiber(const ChainMap& phi);
FreeComplex direct_sum(const FreeComplex& x, const FreeComplex& y);
FreeComplex tensor(const FreeComplex& x, const FreeComplex& y);

ChainMap identity_map(const FreeComplex& x);
ChainMap zero_map(const FreeComplex& source, const FreeComplex& target);
/// Multiplication by a homogeneous a: internal_shift(x, deg a) -> x.
ChainMap multiplication_map(const FreeComplex& x, const AlgebraElement& a);
/// Multiplication by a as a map source -> target when both have identical
/// generator patterns up to the internal shift deg a.
ChainMap scalar_map(const FreeComplex& source, const FreeComplex& target, const AlgebraElement& a);
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap shift_map(const ChainMap& f, int s);
ChainMap internal_shift_map(const ChainMap& f, long k);
ChainMap sum_map(const ChainMap& f, const ChainMap& g);
ChainMap tensor_map(const ChainMap& f, const ChainMap& g);
/// Given phi: X -> Y, psi: X' -> Y', alpha: X -> X', beta: Y -> Y' with
/// beta∘phi = psi∘alpha, the induced map cone(phi) -> cone(psi).
ChainMap cone_map(const ChainMap& phi, const ChainMap& psi, const ChainMap& alpha, const ChainMap& beta);

struct DegreeWindow {
  long lo = -64;
  long hi = 64;
  int c_lo = -8;
  int c_hi = 8;

  bool contains(int c, long d) const { return c >= c_lo && c <= c_hi && d >= lo && d <= hi; }
  /// True when every bidegree of other lies in this window.
  bool covers(const DegreeWindow& other) const {
    return lo <= other.lo && hi >= other.hi && c_lo <= other.c_lo && c_hi >= other.c_hi;
  }
  std::string to_string() const;
  friend bool operator==(const DegreeWindow&, const DegreeWindow&) = default;
};

/// Z_(p)^free_rank ⊕ ⊕ Z/p^k for k in torsion (sorted); over a field, torsion is empty.
struct ModuleDescriptor {
  long free_rank = 0;
  std::vector<int> torsion;

  bool is_zero() const noexcept { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  friend bool operator==(const ModuleDescriptor&, const ModuleDescriptor&) = default;
};

using Bidegree = std::pair<int, long>;  // (chain, internal)

struct HomologyTable {
  DegreeWindow window;
  std::map<Bidegree, ModuleDescriptor> entries;  // nonzero entries only

  ModuleDescriptor at(int c, long d) const;
  bool is_zero() const noexcept { return entries.empty(); }
  friend bool operator==(const HomologyTable& a, const HomologyTable& b) { return a.entries == b.entries; }
  std::string to_string() const;
};

/// Dense coefficient matrix of an algebra matrix restricted to internal degree d:
/// rows are basis coordinates of the target generators, columns of the source.
ScalarMatrix slice_matrix(const AlgebraMatrix& m, const std::vector<long>& source_degrees,
                          const std::vector<long>& target_degrees, const AlgebraSpec& spec, long d);
/// Dimension of the chain-c slice at internal degree d.
std::size_t slice_dimension(const FreeComplex& x, int c, long d);

HomologyTable homology(const FreeComplex& x, const DegreeWindow& w);
ModuleDescriptor homology_at(const FreeComplex& x, int c, long d);

struct Nullity {
  enum class Status { kZeroInWindow, kWitness, kInconclusive };
  Status status = Status::kZeroInWindow;
  std::optional<Bidegree> bidegree;
  ModuleDescriptor descriptor;
  std::string reason;

  bool is_zero() const noexcept { return status == Status::kZeroInWindow; }
  bool is_witness() const noexcept { return status == Status::kWitness; }
  bool is_inconclusive() const noexcept { return status == Status::kInconclusive; }
  std::string to_string() const;
};

const char* status_name(Nullity::Status s);

Nullity is_zero_in_window(const FreeComplex& x, const DegreeWindow& w);

/// Serialized form: {"spec":..., "generators":..., "differentials":[[c,row,col,terms],...]}.
std::string complex_to_json(const FreeComplex& x);
FreeComplex complex_from_json(const std::string& text);

}  // namespace bousfield
