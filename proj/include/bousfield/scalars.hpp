#pragma once

// Exact coefficient arithmetic over F_p, Q and Z_(p), and Smith normal form over
// those rings. Nothing in the library uses floating point.

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

namespace bousfield {

enum class RingKind : std::uint8_t { kFp, kRational, kPLocal };

/// An immutable exact scalar in canonical form. The ring it belongs to is not
/// stored; all arithmetic goes through a CoefficientRing.
///
/// Canonical forms: F_p residues are integers in [0, p); Q and Z_(p) values are
/// fractions in lowest terms with positive denominator. Two scalars of the same
/// ring are equal iff their canonical forms are equal.
class Scalar {
 public:
  Scalar() = default;

  const mpq_class& value() const noexcept { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  std::string to_string() const { return value_.get_str(); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.value_ < b.value_; }

 private:
  friend class CoefficientRing;
  explicit Scalar(mpq_class v) : value_(std::move(v)) {}
  mpq_class value_{0};
};

inline constexpr int kInfiniteValuation = INT_MAX;

class CoefficientRing {
 public:
  static CoefficientRing fp(std::uint32_t p);
  static CoefficientRing rational();
  static CoefficientRing plocal(std::uint32_t p);

  RingKind kind() const noexcept { return kind_; }
  /// The prime for F_p and Z_(p); 0 for Q.
  std::uint32_t prime() const noexcept { return prime_; }
  bool is_field() const noexcept { return kind_ != RingKind::kPLocal; }
  std::string name() const;

  /// Reduces num/den to canonical form, or throws NonInvertibleDenominator.
  Scalar normalize(const mpz_class& num, const mpz_class& den) const;
  Scalar from_int(long v) const { return normalize(mpz_class(v), mpz_class(1)); }
  /// Accepts "n" or "n/d".
  Scalar parse(const std::string& text) const;
  /// Maps a canonical value known to be legal without re-checking denominators.
  Scalar from_rational(const mpq_class& q) const;

  Scalar zero() const { return Scalar(); }
  Scalar one() const { return Scalar(mpq_class(1)); }
  /// p as an element of the ring (0 in F_p, not available for Q).
  Scalar prime_element() const { return from_int(static_cast<long>(prime_)); }

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar pow(const Scalar& a, unsigned e) const;

  bool contains(const Scalar& a) const;
  bool is_unit(const Scalar& a) const;
  /// p-adic valuation over Z_(p); 0 for nonzero field elements; kInfiniteValuation for 0.
  int valuation(const Scalar& a) const;
  Scalar inverse(const Scalar& a) const;
  /// a / b, requiring valuation(b) <= valuation(a).
  Scalar divide(const Scalar& a, const Scalar& b) const;
  /// Unit part u of a = u * p^v (a itself over fields).
  Scalar unit_part(const Scalar& a) const;

  friend bool operator==(const CoefficientRing& a, const CoefficientRing& b) {
    return a.kind_ == b.kind_ && a.prime_ == b.prime_;
  }
  friend bool operator!=(const CoefficientRing& a, const CoefficientRing& b) { return !(a == b); }

 private:
  CoefficientRing(RingKind kind, std::uint32_t prime) : kind_(kind), prime_(prime) {}
  Scalar reduce_fp(const mpz_class& v) const;

  RingKind kind_;
  std::uint32_t prime_;
};

bool is_prime(std::uint32_t n);
/// Largest k with p^k | n (n != 0).
int integer_valuation(const mpz_class& n, std::uint32_t p);

/// Dense row-major matrix of scalars. Used as the working representation for
/// bidegree slices; differentials themselves are stored sparsely.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ScalarMatrix identity(const CoefficientRing& ring, std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  bool is_zero() const;

  ScalarMatrix column_block(std::size_t first, std::size_t count) const;
  /// [this | other]
  ScalarMatrix hconcat(const ScalarMatrix& other) const;

  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

ScalarMatrix multiply(const CoefficientRing& ring, const ScalarMatrix& a, const ScalarMatrix& b);

/// left * D * right == input, where D is the rows x cols matrix carrying
/// `diagonal` on its main diagonal. Over Z_(p) the diagonal entries are powers of
/// p in non-decreasing order; over fields they are all 1.
/// row_transform * input * col_transform == D, i.e. row_transform = left^-1 and
/// col_transform = right^-1.
struct SmithDecomposition {
  std::vector<Scalar> diagonal;
  ScalarMatrix left;
  ScalarMatrix right;
  ScalarMatrix row_transform;
  ScalarMatrix col_transform;
  std::size_t rank = 0;

  /// Valuations of the diagonal entries (all 0 over fields).
  std::vector<int> valuations(const CoefficientRing& ring) const;
};

SmithDecomposition smith_normal_form(const ScalarMatrix& m, const CoefficientRing& ring);

/// Diagonal valuations only; skips the transform bookkeeping.
std::vector<int> smith_valuations(const ScalarMatrix& m, const CoefficientRing& ring);

}  // namespace bousfield
