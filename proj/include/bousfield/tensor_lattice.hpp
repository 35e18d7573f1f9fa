#pragma once

// Finite lattices with a commutative, join-distributive tensor: exhaustive
// models of Bousfield lattices.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bousfield/serialize.hpp"

namespace bousfield {

class FiniteTensorLattice {
 public:
  using Table = std::vector<std::vector<int>>;

  FiniteTensorLattice() = default;
  /// Derives join and meet from the order. Throws AxiomViolation when the order
  /// is not a lattice or the tensor table has the wrong shape.
  static FiniteTensorLattice from_order(std::vector<std::string> labels, std::vector<std::vector<bool>> leq,
                                        Table tensor);
  /// Takes every table as given; validate() audits them.
  static FiniteTensorLattice from_tables(std::vector<std::string> labels, std::vector<std::vector<bool>> leq,
                                         Table join, Table meet, Table tensor);

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Index of a label, or -1.
  int index_of(const std::string& label) const;
  bool leq(int a, int b) const { return leq_[a][b]; }
  int join(int a, int b) const { return join_[a][b]; }
  int meet(int a, int b) const { return meet_[a][b]; }
  int tensor(int a, int b) const { return tensor_[a][b]; }
  int bottom() const noexcept { return bottom_; }
  int max() const noexcept { return max_; }
  /// x ∧ Max = x for every x.
  bool is_unital() const;
  const Table& tensor_table() const noexcept { return tensor_; }

  friend bool operator==(const FiniteTensorLattice& a, const FiniteTensorLattice& b);

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
  Table join_, meet_, tensor_;
  int bottom_ = 0;
  int max_ = 0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Audits every axiom exhaustively; associativity is reported separately.
ValidationReport validate(const FiniteTensorLattice& l);
bool is_associative(const FiniteTensorLattice& l);
/// Throws AxiomViolation with the list of violations.
void require_valid(const FiniteTensorLattice& l);

/// a(z): join of all y with y ∧ z = bottom.
int complement_op(const FiniteTensorLattice& l, int z);
std::vector<int> dl_elements(const FiniteTensorLattice& l);
std::vector<int> ba_elements(const FiniteTensorLattice& l);
std::vector<int> square_zero_elements(const FiniteTensorLattice& l);
/// The order is recovered from annihilators: x ≤ y iff every annihilator of y annihilates x.
bool is_separated(const FiniteTensorLattice& l);

struct LatticeIdeal {
  std::vector<int> members;
  std::optional<int> generator;
};

/// Throws InvalidIdeal unless the set is a nonempty down-set closed under joins.
LatticeIdeal make_ideal(const FiniteTensorLattice& l, std::vector<int> members);
LatticeIdeal principal_ideal(const FiniteTensorLattice& l, int a);

struct QuotientLattice {
  std::vector<std::vector<int>> classes;  // sorted by smallest member
  std::vector<int> class_of;
  std::vector<std::vector<bool>> leq;
  FiniteTensorLattice::Table join;
  FiniteTensorLattice::Table meet;
  bool join_preserving = false;
  bool meet_preserving = false;
};

QuotientLattice quotient_by_ideal(const FiniteTensorLattice& l, const LatticeIdeal& j);

/// Checks that L/a↓ → a↑, [x] ↦ x ∨ a, is an order isomorphism.
bool principal_quotient_iso(const FiniteTensorLattice& l, int a);

FiniteTensorLattice product(const FiniteTensorLattice& k, const FiniteTensorLattice& l);
/// Checks (K×L)/(0×L) ≅ K through [(k, l)] ↦ k.
bool product_quotient_iso(const FiniteTensorLattice& k, const FiniteTensorLattice& l);

/// The principal down-set z↓ with the restricted tables; z is its top.
FiniteTensorLattice down_set(const FiniteTensorLattice& l, int z);

struct QuotientMapReport {
  int z = 0;
  int a_z = 0;
  bool complemented = false;  // z ∨ a(z) = Max
  bool idempotent = false;
  bool well_defined = false;
  bool order_preserving = false;
  bool injective = false;
  bool surjective = false;
  /// A pair of distinct classes with equal image, when injectivity fails.
  std::optional<std::pair<int, int>> witness;
  /// True when the outcome matches what the theory predicts for this z.
  bool as_expected = false;
  std::string model_note;
};

/// L/a(z)↓ → {x ∧ z}, [x] ↦ x ∧ z. The tensor image stands in for the lattice
/// of the Verdier quotient. Throws NotUnital.
QuotientMapReport quotient_map_analysis(const FiniteTensorLattice& l, int z);

struct SplittingReport {
  bool bijective = false;
  bool inverse_is_join = false;
  bool order_isomorphism = false;
  bool dl_splits = false;
  bool ba_splits = false;
  bool ok() const noexcept { return bijective && inverse_is_join && order_isomorphism && dl_splits && ba_splits; }
};

/// x ↦ (x∧z, x∧zc) onto z↓ × zc↓. Throws NotUnital or NotComplementedPair.
SplittingReport splitting_check(const FiniteTensorLattice& l, int z, int zc);

struct SqFreeReport {
  bool square_zero_free = false;
  bool separated = false;
  /// Both hypotheses hold, so the theorem makes a claim.
  bool applicable = false;
  std::vector<int> counterexamples;  // elements x with x ∨ a(x) ≠ Max
  bool all_idempotent = false;
  bool ba_dl_all = false;
};

SqFreeReport sq_free_check(const FiniteTensorLattice& l);

struct ModelFlags {
  bool unital = true;
  bool idempotent = false;    // every element tensor-idempotent
  bool square_zero = false;   // at least one square-zero element
  bool separated = false;     // pass to the annihilator quotient
};

/// Deterministic in (seed, size, flags). The model has at most `size` elements,
/// size in [1, 10]. Throws GenerationFailure.
FiniteTensorLattice random_model(std::uint64_t seed, int size, const ModelFlags& flags = {});

/// Quotient by x ~ y iff x and y have the same annihilators.
FiniteTensorLattice annihilator_quotient(const FiniteTensorLattice& l);

FiniteTensorLattice two_element_lattice();
FiniteTensorLattice boolean_square();
/// Chain 0 < s < z < Max with s∧s = 0, s∧z = s, z∧z = z: z is in DL but not BA.
FiniteTensorLattice chain_model();

Json lattice_to_json(const FiniteTensorLattice& l);
/// Accepts {"elements", "order", "tensor"} with optional "join"/"meet";
/// tensor entries may be indices or labels.
FiniteTensorLattice lattice_from_json(const Json& j);

}  // namespace bousfield
