#include "bousfield/scalars.hpp"

#include <algorithm>
#include <utility>

#include "bousfield/error.hpp"

namespace bousfield {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonInvertibleDenominator: return "NonInvertibleDenominator";
    case ErrorKind::kSpecMismatch: return "SpecMismatch";
    case ErrorKind::kInvalidComplex: return "InvalidComplex";
    case ErrorKind::kInvalidChainMap: return "InvalidChainMap";
    case ErrorKind::kNonPLocalInput: return "NonPLocalInput";
    case ErrorKind::kUnroutablePair: return "UnroutablePair";
    case ErrorKind::kInconclusiveNullity: return "InconclusiveNullity";
    case ErrorKind::kMissingJoinWitness: return "MissingJoinWitness";
    case ErrorKind::kAxiomViolation: return "AxiomViolation";
    case ErrorKind::kInvalidIdeal: return "InvalidIdeal";
    case ErrorKind::kNotUnital: return "NotUnital";
    case ErrorKind::kNotComplementedPair: return "NotComplementedPair";
    case ErrorKind::kGenerationFailure: return "GenerationFailure";
    case ErrorKind::kEvaluationError: return "EvaluationError";
    case ErrorKind::kConfigError: return "ConfigError";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int integer_valuation(const mpz_class& n, std::uint32_t p) {
  if (n == 0) return kInfiniteValuation;
  mpz_class r = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
    ++v;
  }
  return v;
}

CoefficientRing CoefficientRing::fp(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::kInvalidArgument, "F_p needs a prime, got " + std::to_string(p));
  return CoefficientRing(RingKind::kFp, p);
}

CoefficientRing CoefficientRing::rational() { return CoefficientRing(RingKind::kRational, 0); }

CoefficientRing CoefficientRing::plocal(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::kInvalidArgument, "Z_(p) needs a prime, got " + std::to_string(p));
  return CoefficientRing(RingKind::kPLocal, p);
}

std::string CoefficientRing::name() const {
  switch (kind_) {
    case RingKind::kFp: return "F_" + std::to_string(prime_);
    case RingKind::kRational: return "Q";
    case RingKind::kPLocal: return "Z_(" + std::to_string(prime_) + ")";
  }
  return "?";
}

Scalar CoefficientRing::reduce_fp(const mpz_class& v) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), prime_);
  return Scalar(mpq_class(r));
}

Scalar CoefficientRing::normalize(const mpz_class& num, const mpz_class& den) const {
  if (den == 0) throw Error(ErrorKind::kNonInvertibleDenominator, "zero denominator");
  switch (kind_) {
    case RingKind::kRational: {
      mpq_class q(num, den);
      q.canonicalize();
      return Scalar(q);
    }
    case RingKind::kPLocal: {
      mpq_class q(num, den);
      q.canonicalize();
      if (mpz_divisible_ui_p(q.get_den_mpz_t(), prime_)) {
        throw Error(ErrorKind::kNonInvertibleDenominator,
                    num.get_str() + "/" + den.get_str() + " is not in " + name());
      }
      return Scalar(q);
    }
    case RingKind::kFp: {
      mpz_class d;
      mpz_fdiv_r_ui(d.get_mpz_t(), den.get_mpz_t(), prime_);
      if (d == 0) {
        throw Error(ErrorKind::kNonInvertibleDenominator,
                    num.get_str() + "/" + den.get_str() + " is not in " + name());
      }
      mpz_class inv;
      mpz_class pz(prime_);
      mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
      return reduce_fp(num * inv);
    }
  }
  return Scalar();
}

Scalar CoefficientRing::parse(const std::string& text) const {
  auto slash = text.find('/');
  mpz_class num, den(1);
  try {
    if (slash == std::string::npos) {
      num = mpz_class(text, 10);
    } else {
      num = mpz_class(text.substr(0, slash), 10);
      den = mpz_class(text.substr(slash + 1), 10);
    }
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::kParseError, "bad scalar '" + text + "'");
  }
  return normalize(num, den);
}

Scalar CoefficientRing::from_rational(const mpq_class& q) const {
  return normalize(q.get_num(), q.get_den());
}

Scalar CoefficientRing::add(const Scalar& a, const Scalar& b) const {
  if (kind_ == RingKind::kFp) return reduce_fp(a.value_.get_num() + b.value_.get_num());
  return Scalar(mpq_class(a.value_ + b.value_));
}

Scalar CoefficientRing::sub(const Scalar& a, const Scalar& b) const {
  if (kind_ == RingKind::kFp) return reduce_fp(a.value_.get_num() - b.value_.get_num());
  return Scalar(mpq_class(a.value_ - b.value_));
}

Scalar CoefficientRing::mul(const Scalar& a, const Scalar& b) const {
  if (kind_ == RingKind::kFp) return reduce_fp(a.value_.get_num() * b.value_.get_num());
  return Scalar(mpq_class(a.value_ * b.value_));
}

Scalar CoefficientRing::neg(const Scalar& a) const {
  if (kind_ == RingKind::kFp) return reduce_fp(-a.value_.get_num());
  return Scalar(mpq_class(-a.value_));
}

Scalar CoefficientRing::pow(const Scalar& a, unsigned e) const {
  Scalar r = one();
  for (unsigned i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

bool CoefficientRing::contains(const Scalar& a) const {
  const auto& q = a.value_;
  switch (kind_) {
    case RingKind::kRational: return true;
    case RingKind::kPLocal: return !mpz_divisible_ui_p(q.get_den_mpz_t(), prime_);
    case RingKind::kFp: return q.get_den() == 1 && q >= 0 && q < prime_;
  }
  return false;
}

bool CoefficientRing::is_unit(const Scalar& a) const {
  if (a.is_zero()) return false;
  if (kind_ != RingKind::kPLocal) return true;
  return !mpz_divisible_ui_p(a.value_.get_num_mpz_t(), prime_);
}

int CoefficientRing::valuation(const Scalar& a) const {
  if (a.is_zero()) return kInfiniteValuation;
  if (kind_ != RingKind::kPLocal) return 0;
  return integer_valuation(a.value_.get_num(), prime_);
}

Scalar CoefficientRing::inverse(const Scalar& a) const {
  if (!is_unit(a)) throw Error(ErrorKind::kNonInvertibleDenominator, a.to_string() + " is not a unit in " + name());
  return normalize(a.value_.get_den(), a.value_.get_num());
}

Scalar CoefficientRing::divide(const Scalar& a, const Scalar& b) const {
  if (b.is_zero()) throw Error(ErrorKind::kNonInvertibleDenominator, "division by zero");
  if (kind_ == RingKind::kFp) return mul(a, inverse(b));
  mpq_class q = a.value_ / b.value_;
  return normalize(q.get_num(), q.get_den());
}

Scalar CoefficientRing::unit_part(const Scalar& a) const {
  if (kind_ != RingKind::kPLocal || a.is_zero()) return a;
  int v = valuation(a);
  mpz_class pv;
  mpz_ui_pow_ui(pv.get_mpz_t(), prime_, static_cast<unsigned long>(v));
  return normalize(a.value_.get_num(), a.value_.get_den() * pv);
}

ScalarMatrix ScalarMatrix::identity(const CoefficientRing& ring, std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
  return m;
}

bool ScalarMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

ScalarMatrix ScalarMatrix::column_block(std::size_t first, std::size_t count) const {
  ScalarMatrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < count; ++c) out.at(r, c) = at(r, first + c);
  }
  return out;
}

ScalarMatrix ScalarMatrix::hconcat(const ScalarMatrix& other) const {
  if (other.rows_ != rows_) throw Error(ErrorKind::kInvalidArgument, "hconcat row mismatch");
  ScalarMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) out.at(r, cols_ + c) = other.at(r, c);
  }
  return out;
}

ScalarMatrix multiply(const CoefficientRing& ring, const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::kInvalidArgument, "matrix shape mismatch");
  ScalarMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Scalar& y = b.at(k, j);
        if (y.is_zero()) continue;
        out.at(i, j) = ring.add(out.at(i, j), ring.mul(x, y));
      }
    }
  }
  return out;
}

std::vector<int> SmithDecomposition::valuations(const CoefficientRing& ring) const {
  std::vector<int> out;
  out.reserve(diagonal.size());
  for (const auto& d : diagonal) out.push_back(ring.valuation(d));
  return out;
}

namespace {

// Elimination state shared by the full and valuation-only paths.
class SmithEngine {
 public:
  SmithEngine(const ScalarMatrix& m, const CoefficientRing& ring, bool track)
      : ring_(ring), a_(m), track_(track) {
    if (track_) {
      p_ = ScalarMatrix::identity(ring, m.rows());
      pinv_ = ScalarMatrix::identity(ring, m.rows());
      q_ = ScalarMatrix::identity(ring, m.cols());
      qinv_ = ScalarMatrix::identity(ring, m.cols());
    }
  }

  std::vector<Scalar> run() {
    std::vector<Scalar> diag;
    const std::size_t n = std::min(a_.rows(), a_.cols());
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t pr = 0, pc = 0;
      if (!find_pivot(k, pr, pc)) break;
      swap_rows(k, pr);
      swap_cols(k, pc);
      Scalar u = ring_.unit_part(a_.at(k, k));
      if (!u.is_one()) scale_row(k, ring_.inverse(u));
      const Scalar piv = a_.at(k, k);
      for (std::size_t r = k + 1; r < a_.rows(); ++r) {
        if (a_.at(r, k).is_zero()) continue;
        add_row(r, k, ring_.neg(ring_.divide(a_.at(r, k), piv)));
      }
      for (std::size_t c = k + 1; c < a_.cols(); ++c) {
        if (a_.at(k, c).is_zero()) continue;
        add_col(c, k, ring_.neg(ring_.divide(a_.at(k, c), piv)));
      }
      diag.push_back(piv);
    }
    return diag;
  }

  ScalarMatrix p_, pinv_, q_, qinv_;

 private:
  bool find_pivot(std::size_t k, std::size_t& pr, std::size_t& pc) const {
    int best = kInfiniteValuation;
    for (std::size_t r = k; r < a_.rows(); ++r) {
      for (std::size_t c = k; c < a_.cols(); ++c) {
        const Scalar& x = a_.at(r, c);
        if (x.is_zero()) continue;
        int v = ring_.valuation(x);
        if (v < best) {
          best = v;
          pr = r;
          pc = c;
          if (v == 0) return true;
        }
      }
    }
    return best != kInfiniteValuation;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_.at(i, c), a_.at(j, c));
    if (!track_) return;
    for (std::size_t c = 0; c < p_.cols(); ++c) std::swap(p_.at(i, c), p_.at(j, c));
    for (std::size_t r = 0; r < pinv_.rows(); ++r) std::swap(pinv_.at(r, i), pinv_.at(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_.at(r, i), a_.at(r, j));
    if (!track_) return;
    for (std::size_t r = 0; r < q_.rows(); ++r) std::swap(q_.at(r, i), q_.at(r, j));
    for (std::size_t c = 0; c < qinv_.cols(); ++c) std::swap(qinv_.at(i, c), qinv_.at(j, c));
  }

  void scale_row(std::size_t i, const Scalar& u) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_.at(i, c) = ring_.mul(a_.at(i, c), u);
    if (!track_) return;
    for (std::size_t c = 0; c < p_.cols(); ++c) p_.at(i, c) = ring_.mul(p_.at(i, c), u);
    Scalar ui = ring_.inverse(u);
    for (std::size_t r = 0; r < pinv_.rows(); ++r) pinv_.at(r, i) = ring_.mul(pinv_.at(r, i), ui);
  }

  // row_dst += f * row_src
  void add_row(std::size_t dst, std::size_t src, const Scalar& f) {
    for (std::size_t c = 0; c < a_.cols(); ++c) {
      if (a_.at(src, c).is_zero()) continue;
      a_.at(dst, c) = ring_.add(a_.at(dst, c), ring_.mul(f, a_.at(src, c)));
    }
    if (!track_) return;
    for (std::size_t c = 0; c < p_.cols(); ++c) {
      if (p_.at(src, c).is_zero()) continue;
      p_.at(dst, c) = ring_.add(p_.at(dst, c), ring_.mul(f, p_.at(src, c)));
    }
    for (std::size_t r = 0; r < pinv_.rows(); ++r) {
      if (pinv_.at(r, dst).is_zero()) continue;
      pinv_.at(r, src) = ring_.sub(pinv_.at(r, src), ring_.mul(f, pinv_.at(r, dst)));
    }
  }

  // col_dst += f * col_src
  void add_col(std::size_t dst, std::size_t src, const Scalar& f) {
    for (std::size_t r = 0; r < a_.rows(); ++r) {
      if (a_.at(r, src).is_zero()) continue;
      a_.at(r, dst) = ring_.add(a_.at(r, dst), ring_.mul(f, a_.at(r, src)));
    }
    if (!track_) return;
    for (std::size_t r = 0; r < q_.rows(); ++r) {
      if (q_.at(r, src).is_zero()) continue;
      q_.at(r, dst) = ring_.add(q_.at(r, dst), ring_.mul(f, q_.at(r, src)));
    }
    for (std::size_t c = 0; c < qinv_.cols(); ++c) {
      if (qinv_.at(dst, c).is_zero()) continue;
      qinv_.at(src, c) = ring_.sub(qinv_.at(src, c), ring_.mul(f, qinv_.at(dst, c)));
    }
  }

  const CoefficientRing& ring_;
  ScalarMatrix a_;
  bool track_;
};

}  // namespace

SmithDecomposition smith_normal_form(const ScalarMatrix& m, const CoefficientRing& ring) {
  SmithEngine engine(m, ring, true);
  SmithDecomposition out;
  out.diagonal = engine.run();
  out.rank = out.diagonal.size();
  out.row_transform = std::move(engine.p_);
  out.left = std::move(engine.pinv_);
  out.col_transform = std::move(engine.q_);
  out.right = std::move(engine.qinv_);
  return out;
}

std::vector<int> smith_valuations(const ScalarMatrix& m, const CoefficientRing& ring) {
  SmithEngine engine(m, ring, false);
  std::vector<int> out;
  for (const auto& d : engine.run()) out.push_back(ring.valuation(d));
  return out;
}

}  // namespace bousfield
