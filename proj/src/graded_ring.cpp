#include "bousfield/graded_ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bousfield/error.hpp"

namespace bousfield {

long DegreeRule::degree(int i) const {
  if (kind == Kind::kPowersOfTwo) return i >= 62 ? (1L << 62) : (1L << i);
  return step * static_cast<long>(i);
}

struct AlgebraSpec::Cache {
  std::mutex mutex;
  std::map<long, std::vector<Monomial>> bases;
  std::map<long, std::map<Monomial, long>> indices;
};

AlgebraSpec::AlgebraSpec(CoefficientRing ring, ExponentRule exponents, DegreeRule degrees)
    : ring_(ring), exponents_(std::move(exponents)), degrees_(degrees), cache_(std::make_shared<Cache>()) {
  if (exponents_.fallback < 2) throw Error(ErrorKind::kInvalidArgument, "truncation exponents must be >= 2");
  for (int n : exponents_.prefix) {
    if (n < 2) throw Error(ErrorKind::kInvalidArgument, "truncation exponents must be >= 2");
  }
  if (degrees_.kind == DegreeRule::Kind::kLinear && degrees_.step < 1) {
    throw Error(ErrorKind::kInvalidArgument, "linear degree step must be >= 1");
  }
}

std::string AlgebraSpec::describe() const {
  std::ostringstream os;
  os << "Lambda over " << ring_.name() << ", n=[";
  for (std::size_t i = 0; i < exponents_.prefix.size(); ++i) os << exponents_.prefix[i] << ",";
  os << exponents_.fallback << "...], deg x_i = ";
  if (degrees_.kind == DegreeRule::Kind::kPowersOfTwo) {
    os << "2^i";
  } else {
    os << degrees_.step << "*i";
  }
  return os.str();
}

namespace {

void enumerate(const AlgebraSpec& spec, int var, long remaining, std::vector<Monomial::Term>& stack,
               std::vector<Monomial>& out) {
  if (remaining == 0) {
    out.emplace_back(stack);
    return;
  }
  const long dv = spec.degree(var);
  if (dv > remaining) return;
  // Try larger variables first with exponent 0 on this one, then positive exponents.
  // The final list is sorted afterwards, so only completeness matters here.
  enumerate(spec, var + 1, remaining, stack, out);
  const int n = spec.exponent(var);
  for (int e = 1; e < n && e * dv <= remaining; ++e) {
    stack.emplace_back(var, e);
    enumerate(spec, var + 1, remaining - e * dv, stack, out);
    stack.pop_back();
  }
}

}  // namespace

const std::vector<Monomial>& AlgebraSpec::basis(long d) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->bases.find(d);
  if (it != cache_->bases.end()) return it->second;
  std::vector<Monomial> out;
  if (d >= 0) {
    std::vector<Monomial::Term> stack;
    enumerate(*this, 1, d, stack, out);
    std::sort(out.begin(), out.end());
  }
  auto& idx = cache_->indices[d];
  for (std::size_t i = 0; i < out.size(); ++i) idx.emplace(out[i], static_cast<long>(i));
  return cache_->bases.emplace(d, std::move(out)).first->second;
}

long AlgebraSpec::basis_index(const Monomial& m) const {
  const long d = m.degree(*this);
  basis(d);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  const auto& idx = cache_->indices[d];
  auto it = idx.find(m);
  return it == idx.end() ? -1 : it->second;
}

SpecPtr make_spec(const CoefficientRing& ring, ExponentRule exponents, DegreeRule degrees) {
  return std::make_shared<const AlgebraSpec>(ring, std::move(exponents), degrees);
}

Monomial::Monomial(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end());
  for (const auto& [v, e] : terms) {
    if (v < 1 || e < 0) throw Error(ErrorKind::kInvalidArgument, "bad monomial term");
    if (e == 0) continue;
    if (!terms_.empty() && terms_.back().first == v) {
      terms_.back().second += e;
    } else {
      terms_.emplace_back(v, e);
    }
  }
}

int Monomial::exponent_of(int i) const {
  for (const auto& [v, e] : terms_) {
    if (v == i) return e;
  }
  return 0;
}

long Monomial::degree(const AlgebraSpec& spec) const {
  long d = 0;
  for (const auto& [v, e] : terms_) d += e * spec.degree(v);
  return d;
}

bool Monomial::legal(const AlgebraSpec& spec) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.second < spec.exponent(t.first); });
}

Monomial Monomial::times(const Monomial& other) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return Monomial(std::move(all));
}

std::string Monomial::to_string() const {
  if (terms_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : terms_) {
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

bool operator<(const Monomial& a, const Monomial& b) {
  // Walk both sparse vectors in variable order; the first differing exponent decides.
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    const int va = i < a.terms_.size() ? a.terms_[i].first : INT_MAX;
    const int vb = j < b.terms_.size() ? b.terms_[j].first : INT_MAX;
    if (va == vb) {
      if (a.terms_[i].second != b.terms_[j].second) return a.terms_[i].second < b.terms_[j].second;
      ++i;
      ++j;
    } else if (va < vb) {
      return false;  // a has a positive exponent where b has 0
    } else {
      return true;
    }
  }
  return false;
}

AlgebraElement AlgebraElement::one(SpecPtr spec) {
  AlgebraElement out(spec);
  out.terms_.emplace(Monomial(), spec->ring().one());
  return out;
}

AlgebraElement AlgebraElement::constant(SpecPtr spec, const Scalar& s) {
  AlgebraElement out(std::move(spec));
  out.accumulate(Monomial(), s);
  return out;
}

AlgebraElement AlgebraElement::from_int(SpecPtr spec, long v) {
  Scalar s = spec->ring().from_int(v);
  return constant(std::move(spec), s);
}

AlgebraElement AlgebraElement::monomial(SpecPtr spec, const Monomial& m, const Scalar& s) {
  AlgebraElement out(std::move(spec));
  out.accumulate(m, s);
  return out;
}

AlgebraElement AlgebraElement::variable(SpecPtr spec, int i) {
  Scalar one = spec->ring().one();
  return monomial(std::move(spec), Monomial::variable(i), one);
}

bool AlgebraElement::is_homogeneous() const {
  if (terms_.empty()) return true;
  const long d = terms_.begin()->first.degree(*spec_);
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) { return kv.first.degree(*spec_) == d; });
}

long AlgebraElement::degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(*spec_); }

Scalar AlgebraElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void AlgebraElement::accumulate(const Monomial& m, const Scalar& s) {
  if (s.is_zero() || !m.legal(*spec_)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, s);
    return;
  }
  it->second = spec_->ring().add(it->second, s);
  if (it->second.is_zero()) terms_.erase(it);
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    if (m.is_unit()) {
      s += c.to_string();
    } else if (c.is_one()) {
      s += m.to_string();
    } else {
      s += c.to_string() + "*" + m.to_string();
    }
  }
  return s;
}

void require_same_spec(const SpecPtr& a, const SpecPtr& b) {
  if (a == b) return;
  if (!a || !b || *a != *b) {
    throw Error(ErrorKind::kSpecMismatch,
                (a ? a->describe() : std::string("null")) + " vs " + (b ? b->describe() : std::string("null")));
  }
}

AlgebraElement algebra_add(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_spec(a.spec(), b.spec());
  AlgebraElement out = a;
  for (const auto& [m, s] : b.terms()) out.accumulate(m, s);
  return out;
}

AlgebraElement algebra_neg(const AlgebraElement& a) {
  AlgebraElement out(a.spec());
  for (const auto& [m, s] : a.terms()) out.accumulate(m, a.spec()->ring().neg(s));
  return out;
}

AlgebraElement algebra_sub(const AlgebraElement& a, const AlgebraElement& b) { return algebra_add(a, algebra_neg(b)); }

AlgebraElement algebra_scale(const AlgebraElement& a, const Scalar& s) {
  AlgebraElement out(a.spec());
  for (const auto& [m, c] : a.terms()) out.accumulate(m, a.spec()->ring().mul(c, s));
  return out;
}

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_spec(a.spec(), b.spec());
  const auto& ring = a.spec()->ring();
  AlgebraElement out(a.spec());
  for (const auto& [ma, sa] : a.terms()) {
    for (const auto& [mb, sb] : b.terms()) out.accumulate(ma.times(mb), ring.mul(sa, sb));
  }
  return out;
}

AlgebraElement algebra_pow(const AlgebraElement& a, unsigned e) {
  AlgebraElement out = AlgebraElement::one(a.spec());
  for (unsigned i = 0; i < e; ++i) out = algebra_mul(out, a);
  return out;
}

std::vector<Monomial> monomial_basis(const AlgebraSpec& spec, long d) { return spec.basis(d); }

int required_variables(const AlgebraSpec& spec, long window_hi, long min_gen_degree) {
  const long budget = window_hi - min_gen_degree;
  int m = 0;
  while (spec.degree(m + 1) <= budget) ++m;
  return m;
}

}  // namespace bousfield

namespace bousfield {

namespace {

class ElementParser {
 public:
  ElementParser(const SpecPtr& spec, const std::string& text) : spec_(spec), text_(text) {}

  AlgebraElement parse() {
    AlgebraElement e = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::kParseError, "element '" + text_ + "': " + why);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return text_.substr(start, pos_ - start);
  }

  AlgebraElement sum() {
    AlgebraElement acc(spec_);
    bool negate = eat('-');
    if (!negate) eat('+');
    acc = product();
    if (negate) acc = algebra_neg(acc);
    while (true) {
      if (eat('+')) {
        acc = algebra_add(acc, product());
      } else if (eat('-')) {
        acc = algebra_sub(acc, product());
      } else {
        return acc;
      }
    }
  }

  AlgebraElement product() {
    AlgebraElement acc = power();
    while (eat('*')) acc = algebra_mul(acc, power());
    return acc;
  }

  AlgebraElement power() {
    AlgebraElement base = atom();
    if (eat('^')) base = algebra_pow(base, static_cast<unsigned>(std::stoul(digits())));
    return base;
  }

  AlgebraElement atom() {
    skip();
    if (eat('(')) {
      AlgebraElement e = sum();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (pos_ < text_.size() && text_[pos_] == 'x') {
      ++pos_;
      int i = std::stoi(digits());
      if (i < 1) fail("variables start at x1");
      return AlgebraElement::variable(spec_, i);
    }
    if (pos_ < text_.size() && text_[pos_] == 'p' &&
        (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      if (spec_->ring().prime() == 0) fail("p is not defined over Q");
      return AlgebraElement::from_int(spec_, static_cast<long>(spec_->ring().prime()));
    }
    std::string num = digits();
    std::string den = "1";
    skip();
    if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      den = digits();
    }
    return AlgebraElement::constant(spec_, spec_->ring().normalize(mpz_class(num), mpz_class(den)));
  }

  const SpecPtr& spec_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement parse_element(const SpecPtr& spec, const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::kParseError, "empty element");
  return ElementParser(spec, text).parse();
}

}  // namespace bousfield
