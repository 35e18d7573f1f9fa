#include "bousfield/expression.hpp"

#include <cctype>
#include <map>

#include "bousfield/base_change.hpp"
#include "bousfield/error.hpp"

namespace bousfield {

const char* home_name(Home h) {
  switch (h) {
    case Home::kZp:
      return "Zp";
    case Home::kFp:
      return "Fp";
    case Home::kQ:
      return "Q";
  }
  return "?";
}

Home home_from_name(const std::string& name) {
  if (name == "Zp") return Home::kZp;
  if (name == "Fp") return Home::kFp;
  if (name == "Q") return Home::kQ;
  throw Error(ErrorKind::kParseError, "unknown home " + name);
}

Homes Homes::from(const SpecPtr& shape) {
  if (!shape || shape->ring().kind() != RingKind::kPLocal) {
    throw Error(ErrorKind::kNonPLocalInput, "a catalog needs a p-local algebra");
  }
  Homes h;
  h.prime = shape->ring().prime();
  h.zp = shape;
  h.fp = make_spec(CoefficientRing::fp(h.prime), shape->exponents(), shape->degrees());
  h.q = make_spec(CoefficientRing::rational(), shape->exponents(), shape->degrees());
  return h;
}

Homes Homes::standard(std::uint32_t p) { return from(make_spec(CoefficientRing::plocal(p))); }

const SpecPtr& Homes::spec(Home h) const {
  switch (h) {
    case Home::kFp:
      return fp;
    case Home::kQ:
      return q;
    default:
      return zp;
  }
}

namespace {

const std::map<std::string, int> kArity = {
    {"shift", 1},      {"internal_shift", 1},  {"cone", 1},       {"telescope", 1},
    {"fiber_telescope", 1}, {"quotient_telescope", 1}, {"sum", 2}, {"tensor", 2},
    {"restrict_g", 1}, {"restrict_h", 1},      {"push_g", 1},     {"push_h", 1},
};

bool is_element_form(const std::string& head) {
  return head == "cone" || head == "telescope" || head == "fiber_telescope" || head == "quotient_telescope";
}

bool is_constant(const std::string& head) {
  return head == "zero" || head == "unit" || head == "zero_Fp" || head == "unit_Fp" || head == "zero_Q" ||
         head == "unit_Q";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kParseError, what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
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

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    try {
      return std::stol(text_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      fail("expected an integer");
    }
  }

  // Raw element text up to the next top-level ',' or ')'.
  std::string element() {
    skip();
    std::string out;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (depth == 0 && (c == ',' || c == ')')) break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (!std::isspace(static_cast<unsigned char>(c))) out += c;
      ++pos_;
    }
    if (out.empty()) fail("expected an algebra element");
    return out;
  }

  Expr expr() {
    Expr e;
    e.head = ident();
    if (is_constant(e.head)) return e;
    auto it = kArity.find(e.head);
    if (it == kArity.end()) fail("unknown operator '" + e.head + "'");
    expect('(');
    if (e.head == "shift" || e.head == "internal_shift") {
      e.number = integer();
      expect(',');
      e.args.push_back(expr());
    } else if (is_element_form(e.head)) {
      e.element = element();
      if (eat(',')) {
        e.args.push_back(expr());
      } else {
        e.args.push_back(Expr{"unit", "", std::nullopt, {}});
      }
    } else {
      for (int i = 0; i < it->second; ++i) {
        if (i > 0) expect(',');
        e.args.push_back(expr());
      }
    }
    expect(')');
    return e;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void type_error(const Expr& e, const std::string& what) {
  throw Error(ErrorKind::kEvaluationError, e.to_string() + ": " + what);
}

IndComplex as_ind(const Value& v) { return v.free ? IndComplex::constant(*v.free) : v.ind; }

Value push(const Value& v, const RingMap& f, Home target) {
  if (v.free) return make_value(target, pushforward(f, *v.free));
  return make_value(
      target, ind_apply(v.ind, f.target(), [f](const FreeComplex& x) { return pushforward(f, x); },
                        [f](const ChainMap& m) { return pushforward(f, m); }));
}

}  // namespace

std::string Expr::to_string() const {
  if (is_constant(head)) return head;
  std::string out = head + "(";
  if (number) out += std::to_string(*number) + ", ";
  if (!element.empty()) out += element + (args.empty() ? "" : ", ");
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i].to_string();
  return out + ")";
}

Expr parse_expression(const std::string& text) { return Parser(text).run(); }

Value make_value(Home home, const FreeComplex& x) {
  Value v;
  v.home = home;
  v.ind = IndComplex::constant(x);
  v.free = x;
  return v;
}

Value make_value(Home home, const IndComplex& x) {
  Value v;
  v.home = home;
  v.ind = x;
  return v;
}

IndComplex ind_cone(const AlgebraElement& a, const IndComplex& x) {
  if (!a.is_homogeneous()) throw Error(ErrorKind::kInvalidArgument, "cone of a non-homogeneous element");
  const long k = a.degree();
  auto stage = [a, x](int s) { return cone(multiplication_map(x.stage(s), a)); };
  auto map = [a, x, k](int s) {
    return cone_map(multiplication_map(x.stage(s), a), multiplication_map(x.stage(s + 1), a),
                    internal_shift_map(x.map(s), k), x.map(s));
  };
  return IndComplex(x.spec(), stage, map, x.is_uniform(), x.is_constant()).with_vanishing(x.vanishing_steps());
}

Value evaluate(const Expr& e, const Homes& homes) {
  const std::string& h = e.head;
  if (is_constant(h)) {
    const Home home = h.ends_with("_Fp") ? Home::kFp : h.ends_with("_Q") ? Home::kQ : Home::kZp;
    const SpecPtr& spec = homes.spec(home);
    return make_value(home, h.starts_with("zero") ? FreeComplex::zero(spec) : FreeComplex::unit(spec));
  }
  std::vector<Value> args;
  for (const Expr& a : e.args) args.push_back(evaluate(a, homes));

  if (h == "shift" || h == "internal_shift") {
    const Value& v = args[0];
    const long n = *e.number;
    if (h == "shift") {
      if (v.free) return make_value(v.home, shift(*v.free, static_cast<int>(n)));
      return make_value(v.home, ind_shift(v.ind, static_cast<int>(n)));
    }
    if (v.free) return make_value(v.home, internal_shift(*v.free, n));
    return make_value(v.home, ind_apply(
                                  v.ind, v.ind.spec(), [n](const FreeComplex& x) { return internal_shift(x, n); },
                                  [n](const ChainMap& m) { return internal_shift_map(m, n); }));
  }
  if (is_element_form(h)) {
    const Value& base = args[0];
    AlgebraElement a = [&] {
      try {
        return parse_element(homes.spec(base.home), e.element);
      } catch (const Error& err) {
        type_error(e, err.what());
      }
    }();
    if (!a.is_homogeneous()) type_error(e, "element must be homogeneous");
    if (h == "cone") {
      if (base.free) return make_value(base.home, cone(multiplication_map(*base.free, a)));
      return make_value(base.home, ind_cone(a, base.ind));
    }
    if (!base.free) type_error(e, "telescopes are formed on free objects only");
    if (h == "telescope") return make_value(base.home, IndComplex::telescope(a, *base.free));
    if (h == "fiber_telescope") return make_value(base.home, IndComplex::fiber_to_telescope(a, *base.free));
    return make_value(base.home, IndComplex::telescope_quotient(a, *base.free));
  }
  if (h == "sum" || h == "tensor") {
    if (args[0].home != args[1].home) type_error(e, "operands live in different homes");
    const Home home = args[0].home;
    if (args[0].free && args[1].free) {
      return make_value(home, h == "sum" ? direct_sum(*args[0].free, *args[1].free)
                                         : tensor(*args[0].free, *args[1].free));
    }
    return make_value(home, h == "sum" ? ind_sum(as_ind(args[0]), as_ind(args[1]))
                                       : ind_tensor(as_ind(args[0]), as_ind(args[1])));
  }
  const Value& v = args[0];
  if (h == "restrict_g") {
    if (v.home != Home::kFp) type_error(e, "restrict_g takes an Fp object");
    if (!v.free) type_error(e, "restrict_g takes a free object");
    return make_value(Home::kZp, restrict_g(*v.free));
  }
  if (h == "restrict_h") {
    if (v.home != Home::kQ) type_error(e, "restrict_h takes a Q object");
    if (!v.free) type_error(e, "restrict_h takes a free object");
    return make_value(Home::kZp, restrict_h(*v.free, homes.prime));
  }
  if (v.home != Home::kZp) type_error(e, h + " takes a Zp object");
  if (h == "push_g") return push(v, RingMap::g(homes.zp), Home::kFp);
  return push(v, RingMap::h(homes.zp), Home::kQ);
}

Value evaluate(const std::string& text, const Homes& homes) { return evaluate(parse_expression(text), homes); }

HomologyTable value_homology(const Value& v, const DegreeWindow& w, const StabilizationPolicy& policy) {
  if (v.free) return homology(*v.free, w);
  return telescope_homology(v.ind, w, policy).table;
}

Nullity value_is_zero(const Value& v, const DegreeWindow& w, const StabilizationPolicy& policy) {
  if (v.free) return is_zero_in_window(*v.free, w);
  return ind_is_zero(v.ind, w, policy);
}

}  // namespace bousfield
