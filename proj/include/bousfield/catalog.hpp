#pragma once

// Finite catalogs of objects, their nullity matrices and the observed Bousfield
// preorder and lattice. Every observed statement is relative to a window and a
// catalog hash.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bousfield/expression.hpp"
#include "bousfield/serialize.hpp"
#include "bousfield/tensor_lattice.hpp"

namespace bousfield {

struct CatalogObject {
  int id = 0;
  std::string expression;  // canonical
  Value value;

  Home home() const noexcept { return value.home; }
};

class Catalog {
 public:
  explicit Catalog(Homes homes, DegreeWindow window = {}, StabilizationPolicy policy = {});

  /// 0, Λ, ΣΛ, cone(p), telescope(p), F, the quotient system Λ_Q/Λ, cone(x1), cone(x1)⊗cone(p).
  static Catalog seed(const Homes& homes, DegreeWindow window = {}, StabilizationPolicy policy = {});
  static const std::vector<std::string>& seed_expressions();

  /// Returns the existing id when the canonical expression is already present.
  /// Throws ParseError or EvaluationError.
  int add_object(const std::string& expression);
  /// Id of a canonical expression, or -1.
  int find(const std::string& expression) const;

  int size() const noexcept { return static_cast<int>(objects_.size()); }
  const std::vector<CatalogObject>& objects() const noexcept { return objects_; }
  const CatalogObject& object(int id) const { return objects_.at(id); }
  const Homes& homes() const noexcept { return homes_; }
  const DegreeWindow& window() const noexcept { return window_; }
  const StabilizationPolicy& policy() const noexcept { return policy_; }
  /// FNV-1a of the prime, shape, window, policy and expressions, as 16 hex digits.
  std::string hash() const;

 private:
  Homes homes_;
  DegreeWindow window_;
  StabilizationPolicy policy_;
  std::vector<CatalogObject> objects_;
};

/// a ∧ b in a common home: Zp × Fp goes through push_g, Zp × Q through push_h.
/// Throws UnroutablePair for Fp × Q.
Value routed_tensor(const Value& a, const Value& b, const Homes& homes);
Nullity routed_nullity(const Value& a, const Value& b, const Homes& homes, const DegreeWindow& w,
                       const StabilizationPolicy& policy = {});

struct NullityMatrix {
  DegreeWindow window;
  std::vector<std::vector<Nullity>> entries;

  int size() const noexcept { return static_cast<int>(entries.size()); }
  bool zero(int i, int j) const { return entries[i][j].is_zero(); }
  std::vector<std::pair<int, int>> inconclusive() const;
};

/// Fills rows and columns for every catalog object beyond m.size().
void extend_nullity(const Catalog& catalog, NullityMatrix& m);
NullityMatrix compute_nullity(const Catalog& catalog, const DegreeWindow& w);
NullityMatrix compute_nullity(const Catalog& catalog);

struct ObservedOrder {
  std::vector<std::vector<bool>> leq;      // over object ids
  std::vector<int> class_of;               // object id -> class index
  std::vector<std::vector<int>> classes;   // ordered by lowest member id

  bool less_equal(int i, int j) const { return leq[i][j]; }
  bool equivalent(int i, int j) const { return class_of[i] == class_of[j]; }
};

/// ⟨X_i⟩ ≤ ⟨X_j⟩ iff every object annihilating X_j annihilates X_i. Throws InconclusiveNullity.
ObservedOrder observed_preorder(const NullityMatrix& n);

enum class ClosureOp { kSum, kTensor, kShift, kCone };

struct ClosureReport {
  int added = 0;
  int passes = 0;
  bool cap_exceeded = false;
};

/// Adds sums, tensors, shifts and cones of class representatives whose nullity
/// column is new, until nothing new appears or the catalog reaches cap.
/// `nullity` is extended alongside the catalog.
ClosureReport close_under(Catalog& catalog, const std::set<ClosureOp>& ops, int cap, NullityMatrix& nullity);

struct ObservedLattice {
  FiniteTensorLattice lattice;
  std::vector<int> representatives;  // class index -> lowest object id
  std::vector<int> class_of;         // object id -> class index
  DegreeWindow window;
  std::string catalog_hash;

  int class_of_object(int id) const { return class_of.at(id); }
};

/// Joins come from exact nullity columns of sums, tensors from evaluated
/// products of representatives. Throws MissingJoinWitness when a join or tensor
/// class is not in the catalog.
ObservedLattice observed_lattice(const Catalog& catalog, const NullityMatrix& n);

Json nullity_matrix_to_json(const NullityMatrix& n);
NullityMatrix nullity_matrix_from_json(const Json& j);
Json observed_lattice_to_json(const ObservedLattice& l);
ObservedLattice observed_lattice_from_json(const Json& j);

struct LoadedCatalog {
  Catalog catalog;
  std::optional<NullityMatrix> nullity;
  std::optional<ObservedLattice> lattice;
};

Json catalog_to_json(const Catalog& catalog, const NullityMatrix* nullity = nullptr,
                     const ObservedLattice* lattice = nullptr);
/// Re-evaluates every expression; stored tables are taken as written. Throws ParseError.
LoadedCatalog catalog_from_json(const Json& j);

}  // namespace bousfield
