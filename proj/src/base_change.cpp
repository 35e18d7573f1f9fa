#include "bousfield/base_change.hpp"

#include <algorithm>

#include "bousfield/error.hpp"

namespace bousfield {

namespace {

SpecPtr retarget(const SpecPtr& source, const CoefficientRing& ring) {
  return make_spec(ring, source->exponents(), source->degrees());
}

void require_plocal(const SpecPtr& spec) {
  if (!spec || spec->ring().kind() != RingKind::kPLocal) {
    throw Error(ErrorKind::kNonPLocalInput, "expected a p-local source, got " + (spec ? spec->describe() : "null"));
  }
}

AlgebraMatrix map_matrix(const AlgebraMatrix& m, const std::function<AlgebraElement(const AlgebraElement&)>& f) {
  AlgebraMatrix out(m.rows(), m.cols());
  for (const auto& e : m.entries()) out.set(e.row, e.col, f(e.value));
  return out;
}

FreeComplex map_complex(const FreeComplex& x, const SpecPtr& target,
                        const std::function<AlgebraElement(const AlgebraElement&)>& f) {
  std::map<int, AlgebraMatrix> diffs;
  for (const auto& [c, m] : x.differential_map()) diffs.emplace(c, map_matrix(m, f));
  return FreeComplex(target, x.generator_map(), std::move(diffs));
}

}  // namespace

RingMap RingMap::g(const SpecPtr& source) {
  require_plocal(source);
  RingMap f;
  f.kind_ = Kind::kG;
  f.source_ = source;
  f.target_ = retarget(source, CoefficientRing::fp(source->ring().prime()));
  return f;
}

RingMap RingMap::h(const SpecPtr& source) {
  require_plocal(source);
  RingMap f;
  f.kind_ = Kind::kH;
  f.source_ = source;
  f.target_ = retarget(source, CoefficientRing::rational());
  return f;
}

RingMap RingMap::generic(SpecPtr source, SpecPtr target, std::vector<AlgebraElement> images) {
  RingMap f;
  f.kind_ = Kind::kGeneric;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const AlgebraElement& im = images[i];
    require_same_spec(im.spec(), f.target_);
    const int var = static_cast<int>(i) + 1;
    if (!im.is_zero() && (!im.is_homogeneous() || im.degree() != f.source_->degree(var))) {
      throw Error(ErrorKind::kInvalidArgument, "image of x" + std::to_string(var) + " has the wrong degree");
    }
    if (!algebra_pow(im, static_cast<unsigned>(f.source_->exponent(var))).is_zero()) {
      throw Error(ErrorKind::kInvalidArgument, "image of x" + std::to_string(var) + " violates the truncation");
    }
  }
  f.images_ = std::move(images);
  return f;
}

std::string RingMap::name() const {
  switch (kind_) {
    case Kind::kG: return "g";
    case Kind::kH: return "h";
    case Kind::kGeneric: return "generic";
  }
  return "?";
}

AlgebraElement RingMap::apply(const AlgebraElement& a) const {
  require_same_spec(a.spec(), source_);
  const CoefficientRing& ring = target_->ring();
  if (kind_ != Kind::kGeneric) {
    return algebra_map_coefficients(a, target_, [&](const Scalar& s) { return ring.from_rational(s.value()); });
  }
  AlgebraElement out(target_);
  for (const auto& [m, s] : a.terms()) {
    AlgebraElement term = AlgebraElement::constant(target_, ring.from_rational(s.value()));
    for (const auto& [v, e] : m.terms()) {
      AlgebraElement x = static_cast<std::size_t>(v) <= images_.size() ? images_[v - 1]
                                                                     : AlgebraElement::variable(target_, v);
      term = algebra_mul(term, algebra_pow(x, static_cast<unsigned>(e)));
    }
    out = algebra_add(out, term);
  }
  return out;
}

Json ring_map_to_json(const RingMap& f) {
  Json j;
  j["map"] = f.kind() == RingMap::Kind::kG ? "G" : f.kind() == RingMap::Kind::kH ? "H" : "Generic";
  j["prime"] = f.source()->ring().prime();
  return j;
}

RingMap ring_map_from_json(const Json& j, const SpecPtr& shape) {
  try {
    const std::string kind = j.at("map").get<std::string>();
    const auto p = j.at("prime").get<std::uint32_t>();
    SpecPtr source = retarget(shape, CoefficientRing::plocal(p));
    if (kind == "G") return RingMap::g(source);
    if (kind == "H") return RingMap::h(source);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("ring map: ") + e.what());
  }
  throw Error(ErrorKind::kConfigError, "only G and H ring maps can be configured");
}

FreeComplex pushforward(const RingMap& f, const FreeComplex& x) {
  require_same_spec(x.spec(), f.source());
  return map_complex(x, f.target(), [&](const AlgebraElement& a) { return f.apply(a); });
}

ChainMap pushforward(const RingMap& f, const ChainMap& phi) {
  std::map<int, AlgebraMatrix> comps;
  for (const auto& [c, m] : phi.component_map()) {
    comps.emplace(c, map_matrix(m, [&](const AlgebraElement& a) { return f.apply(a); }));
  }
  return ChainMap(pushforward(f, phi.source()), pushforward(f, phi.target()), std::move(comps));
}

FreeComplex restrict_g(const FreeComplex& x) {
  const CoefficientRing& fp = x.spec()->ring();
  if (fp.kind() != RingKind::kFp) {
    throw Error(ErrorKind::kSpecMismatch, "restriction along g needs an F_p complex, got " + x.spec()->describe());
  }
  const SpecPtr target = retarget(x.spec(), CoefficientRing::plocal(fp.prime()));
  const CoefficientRing& zp = target->ring();
  auto lift = [&](const AlgebraElement& a) {
    return algebra_map_coefficients(a, target, [&](const Scalar& s) { return zp.from_rational(s.value()); });
  };
  auto lifted = [&](int c) { return map_matrix(x.differential(c), lift); };
  const AlgebraElement p = AlgebraElement::constant(target, zp.prime_element());
  auto divide_by_p = [&](const AlgebraElement& a) {
    return algebra_map_coefficients(a, target, [&](const Scalar& s) { return zp.divide(s, zp.prime_element()); });
  };

  std::map<int, std::vector<long>> gens;
  if (!x.has_no_generators()) {
    for (int c = x.min_chain(); c <= x.max_chain() + 1; ++c) {
      std::vector<long> g = x.generators(c);
      const auto& lower = x.generators(c - 1);
      g.insert(g.end(), lower.begin(), lower.end());
      if (!g.empty()) gens[c] = std::move(g);
    }
  }
  auto rank = [&](int c) { return x.rank(c); };
  std::map<int, AlgebraMatrix> diffs;
  for (const auto& [c, _] : gens) {
    if (!gens.count(c - 1)) continue;
    // W_c = T_c ⊕ S_c with T_c = X_c, S_c = X_{c-1}.
    const std::size_t tc = rank(c), sc = rank(c - 1), tl = rank(c - 1), sl = rank(c - 2);
    AlgebraMatrix d(tl + sl, tc + sc);
    const AlgebraMatrix dc = lifted(c);
    const AlgebraMatrix dl = lifted(c - 1);
    for (const auto& e : dc.entries()) d.set(e.row, e.col, e.value);
    for (std::size_t i = 0; i < sc; ++i) d.set(i, tc + i, p);
    for (const auto& e : dl.entries()) d.set(tl + e.row, tc + e.col, algebra_neg(e.value));
    const AlgebraMatrix square = matrix_product(dl, dc, target);
    for (const auto& e : square.entries()) {
      d.set(tl + e.row, e.col, algebra_neg(divide_by_p(e.value)));
    }
    if (!d.is_zero()) diffs.emplace(c, std::move(d));
  }
  return FreeComplex(target, std::move(gens), std::move(diffs));
}

namespace {

int min_valuation(const AlgebraMatrix& m, std::uint32_t p) {
  int v = 0;
  for (const auto& e : m.entries()) {
    for (const auto& [mono, s] : e.value.terms()) {
      v = std::min(v, integer_valuation(s.numerator(), p) - integer_valuation(s.denominator(), p));
    }
  }
  return v;
}

}  // namespace

FreeComplex p_local_lattice(const FreeComplex& y, std::uint32_t p) {
  if (y.spec()->ring().kind() != RingKind::kRational) {
    throw Error(ErrorKind::kSpecMismatch, "restriction along h needs a rational complex, got " + y.spec()->describe());
  }
  const SpecPtr target = retarget(y.spec(), CoefficientRing::plocal(p));
  const CoefficientRing& zp = target->ring();
  std::map<int, AlgebraMatrix> diffs;
  for (const auto& [c, dc] : y.differential_map()) {
    // Scaling d_c by p^k amounts to rescaling the bases of all chains above c.
    const mpq_class factor = zp.pow(zp.prime_element(), static_cast<unsigned>(-min_valuation(dc, p))).value();
    diffs.emplace(c, map_matrix(dc, [&](const AlgebraElement& a) {
                    return algebra_map_coefficients(
                        a, target, [&](const Scalar& s) { return zp.from_rational(mpq_class(s.value() * factor)); });
                  }));
  }
  return FreeComplex(target, y.generator_map(), std::move(diffs));
}

IndComplex restrict_h(const FreeComplex& y, std::uint32_t p) {
  FreeComplex lattice = p_local_lattice(y, p);
  return IndComplex::telescope(AlgebraElement::constant(lattice.spec(), lattice.spec()->ring().prime_element()),
                               lattice);
}

HomologyTable mixed_tensor(const FreeComplex& a, const FreeComplex& y, const DegreeWindow& w) {
  const RingMap h = RingMap::h(a.spec());
  require_same_spec(y.spec(), h.target());
  return homology(tensor(pushforward(h, a), y), w);
}

namespace {

HomologyTable ind_table(const IndComplex& ind, const DegreeWindow& w, const StabilizationPolicy& policy,
                        bool& inconclusive) {
  IndHomology out = telescope_homology(ind, w, policy);
  if (!out.report.inconclusive.empty()) inconclusive = true;
  return out.table;
}

}  // namespace

ProjectionSides projection_formula_sides(const RingMap& f, const FreeComplex& a, const FreeComplex& b,
                                         const DegreeWindow& w, const StabilizationPolicy& policy) {
  require_same_spec(a.spec(), f.source());
  require_same_spec(b.spec(), f.target());
  ProjectionSides sides;
  switch (f.kind()) {
    case RingMap::Kind::kG:
      sides.left = homology(restrict_g(tensor(pushforward(f, a), b)), w);
      sides.right = homology(tensor(a, restrict_g(b)), w);
      break;
    case RingMap::Kind::kH: {
      const std::uint32_t p = f.source()->ring().prime();
      sides.left = homology(tensor(pushforward(f, a), b), w);
      sides.right = ind_table(ind_tensor(IndComplex::constant(a), restrict_h(b, p)), w, policy, sides.inconclusive);
      break;
    }
    case RingMap::Kind::kGeneric:
      throw Error(ErrorKind::kInvalidArgument, "restriction is only modeled along g and h");
  }
  sides.left.window = sides.right.window = w;
  return sides;
}

bool projection_formula_check(const RingMap& f, const FreeComplex& a, const FreeComplex& b, const DegreeWindow& w,
                              const StabilizationPolicy& policy) {
  return projection_formula_sides(f, a, b, w, policy).agree();
}

}  // namespace bousfield
