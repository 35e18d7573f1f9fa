#include "bousfield/serialize.hpp"

#include "bousfield/error.hpp"

namespace bousfield {

Json ring_to_json(const CoefficientRing& ring) {
  Json j;
  switch (ring.kind()) {
    case RingKind::kFp: j["kind"] = "Fp"; break;
    case RingKind::kRational: j["kind"] = "Rational"; break;
    case RingKind::kPLocal: j["kind"] = "PLocal"; break;
  }
  if (ring.kind() != RingKind::kRational) j["prime"] = ring.prime();
  return j;
}

CoefficientRing ring_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Rational") return CoefficientRing::rational();
    const auto p = j.at("prime").get<std::uint32_t>();
    if (kind == "Fp") return CoefficientRing::fp(p);
    if (kind == "PLocal") return CoefficientRing::plocal(p);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("ring: ") + e.what());
  }
  throw Error(ErrorKind::kParseError, "unknown ring kind");
}

Json spec_to_json(const AlgebraSpec& spec) {
  Json j;
  j["ring"] = ring_to_json(spec.ring());
  j["exponents"] = {{"prefix", spec.exponents().prefix}, {"default", spec.exponents().fallback}};
  if (spec.degrees().kind == DegreeRule::Kind::kPowersOfTwo) {
    j["degrees"] = {{"rule", "powers_of_two"}};
  } else {
    j["degrees"] = {{"rule", "linear"}, {"step", spec.degrees().step}};
  }
  return j;
}

SpecPtr spec_from_json(const Json& j) {
  try {
    ExponentRule ex;
    if (j.contains("exponents")) {
      ex.prefix = j["exponents"].value("prefix", std::vector<int>{});
      ex.fallback = j["exponents"].value("default", 2);
    }
    DegreeRule dr;
    if (j.contains("degrees")) {
      const std::string rule = j["degrees"].value("rule", std::string("powers_of_two"));
      if (rule == "linear") {
        dr.kind = DegreeRule::Kind::kLinear;
        dr.step = j["degrees"].value("step", 1L);
      } else if (rule != "powers_of_two") {
        throw Error(ErrorKind::kParseError, "unknown degree rule " + rule);
      }
    }
    return make_spec(ring_from_json(j.at("ring")), ex, dr);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("spec: ") + e.what());
  }
}

Json element_to_json(const AlgebraElement& a) {
  Json terms = Json::array();
  for (const auto& [m, s] : a.terms()) {
    Json mono = Json::array();
    for (const auto& [v, e] : m.terms()) mono.push_back({v, e});
    terms.push_back({s.to_string(), mono});
  }
  return terms;
}

AlgebraElement element_from_json(const SpecPtr& spec, const Json& j) {
  AlgebraElement out(spec);
  for (const auto& term : j) {
    std::vector<Monomial::Term> mono;
    for (const auto& ve : term.at(1)) mono.emplace_back(ve.at(0).get<int>(), ve.at(1).get<int>());
    out.accumulate(Monomial(std::move(mono)), spec->ring().parse(term.at(0).get<std::string>()));
  }
  return out;
}

Json complex_json(const FreeComplex& x) {
  Json j;
  j["spec"] = spec_to_json(*x.spec());
  Json gens = Json::array();
  for (const auto& [c, g] : x.generator_map()) gens.push_back({c, g});
  j["generators"] = gens;
  Json diffs = Json::array();
  for (const auto& [c, m] : x.differential_map()) {
    for (const auto& e : m.entries()) diffs.push_back({c, e.row, e.col, element_to_json(e.value)});
  }
  j["differentials"] = diffs;
  return j;
}

FreeComplex complex_from_json_value(const Json& j) {
  try {
    SpecPtr spec = spec_from_json(j.at("spec"));
    std::map<int, std::vector<long>> gens;
    for (const auto& g : j.at("generators")) gens[g.at(0).get<int>()] = g.at(1).get<std::vector<long>>();
    std::map<int, AlgebraMatrix> diffs;
    auto rank = [&](int c) -> std::size_t {
      auto it = gens.find(c);
      return it == gens.end() ? 0 : it->second.size();
    };
    for (const auto& e : j.at("differentials")) {
      const int c = e.at(0).get<int>();
      auto it = diffs.find(c);
      if (it == diffs.end()) it = diffs.emplace(c, AlgebraMatrix(rank(c - 1), rank(c))).first;
      it->second.set(e.at(1).get<std::size_t>(), e.at(2).get<std::size_t>(), element_from_json(spec, e.at(3)));
    }
    return FreeComplex(spec, std::move(gens), std::move(diffs));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("complex: ") + e.what());
  }
}

std::string complex_to_json(const FreeComplex& x) { return complex_json(x).dump(); }

FreeComplex complex_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
  return complex_from_json_value(j);
}

Json window_to_json(const DegreeWindow& w) {
  return {{"lo", w.lo}, {"hi", w.hi}, {"c_lo", w.c_lo}, {"c_hi", w.c_hi}};
}

DegreeWindow window_from_json(const Json& j) {
  DegreeWindow w;
  w.lo = j.value("lo", w.lo);
  w.hi = j.value("hi", w.hi);
  w.c_lo = j.value("c_lo", w.c_lo);
  w.c_hi = j.value("c_hi", w.c_hi);
  if (w.lo > w.hi || w.c_lo > w.c_hi) throw Error(ErrorKind::kConfigError, "empty window " + w.to_string());
  return w;
}

Json descriptor_to_json(const ModuleDescriptor& d) { return {{"free_rank", d.free_rank}, {"torsion", d.torsion}}; }

ModuleDescriptor descriptor_from_json(const Json& j) {
  try {
    return {j.at("free_rank").get<long>(), j.at("torsion").get<std::vector<int>>()};
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("module: ") + e.what());
  }
}

Json table_to_json(const HomologyTable& t) {
  Json entries = Json::array();
  for (const auto& [bd, desc] : t.entries) {
    entries.push_back({{"chain", bd.first}, {"internal", bd.second}, {"module", descriptor_to_json(desc)}});
  }
  return {{"window", window_to_json(t.window)}, {"entries", entries}};
}

Json nullity_to_json(const Nullity& n) {
  Json j;
  j["status"] = status_name(n.status);
  if (n.bidegree) {
    j["bidegree"] = {n.bidegree->first, n.bidegree->second};
    j["module"] = descriptor_to_json(n.descriptor);
  }
  if (!n.reason.empty()) j["reason"] = n.reason;
  return j;
}

Nullity nullity_from_json(const Json& j) {
  try {
    Nullity n;
    const std::string status = j.at("status").get<std::string>();
    if (status == "ZeroInWindow") {
      n.status = Nullity::Status::kZeroInWindow;
    } else if (status == "Witness") {
      n.status = Nullity::Status::kWitness;
    } else if (status == "Inconclusive") {
      n.status = Nullity::Status::kInconclusive;
    } else {
      throw Error(ErrorKind::kParseError, "unknown nullity status " + status);
    }
    if (j.contains("bidegree")) {
      n.bidegree = Bidegree{j["bidegree"].at(0).get<int>(), j["bidegree"].at(1).get<long>()};
      n.descriptor = descriptor_from_json(j.at("module"));
    }
    n.reason = j.value("reason", std::string());
    return n;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("nullity: ") + e.what());
  }
}

}  // namespace bousfield
