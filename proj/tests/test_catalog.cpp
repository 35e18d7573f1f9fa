#include <gtest/gtest.h>

#include "bousfield/base_change.hpp"
#include "bousfield/catalog.hpp"
#include "bousfield/error.hpp"
#include "support.hpp"

using namespace bousfield;
using namespace testsupport;

namespace {

const DegreeWindow kWindow{0, 32, -8, 8};

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInvalidArgument;
}

Catalog from(std::uint32_t p, const std::vector<std::string>& exprs, DegreeWindow w = kWindow) {
  Catalog c(Homes::standard(p), w);
  for (const auto& e : exprs) c.add_object(e);
  return c;
}

int id(const Catalog& c, const std::string& e) { return c.find(parse_expression(e).to_string()); }

}  // namespace

TEST(Expression, CanonicalForm) {
  EXPECT_EQ(parse_expression("cone( p )").to_string(), "cone(p, unit)");
  EXPECT_EQ(parse_expression("tensor(cone(x1),telescope(p,shift(-2,unit)))").to_string(),
            "tensor(cone(x1, unit), telescope(p, shift(-2, unit)))");
  EXPECT_EQ(parse_expression("cone(x1^2 + p*x2, unit_Fp)").to_string(), "cone(x1^2+p*x2, unit_Fp)");
  for (const auto& e : Catalog::seed_expressions()) EXPECT_EQ(parse_expression(e).to_string(), e);
}

TEST(Expression, ParseErrors) {
  for (const char* bad : {"", "cone(", "cone()", "unit unit", "frobnicate(unit)", "sum(unit)", "shift(x, unit)"}) {
    EXPECT_EQ(kind_of([&] { parse_expression(bad); }), ErrorKind::kParseError) << bad;
  }
}

TEST(Expression, EvaluationErrors) {
  Homes h = Homes::standard(3);
  for (const char* bad : {"sum(unit, unit_Fp)", "restrict_g(unit)", "restrict_h(unit_Fp)", "push_g(unit_Q)",
                          "telescope(p, telescope(p))", "cone(x1+x2)", "cone(zz)"}) {
    EXPECT_EQ(kind_of([&] { evaluate(bad, h); }), ErrorKind::kEvaluationError) << bad;
  }
  EXPECT_EQ(kind_of([] { Homes::from(rational()); }), ErrorKind::kNonPLocalInput);
}

TEST(Expression, HomologyExamples) {
  for (std::uint32_t p : {2u, 3u}) {
    Homes h = Homes::standard(p);
    HomologyTable cone_p = value_homology(evaluate("cone(p)", h), kWindow);
    HomologyTable unit = value_homology(evaluate("unit", h), kWindow);
    for (long d = 0; d <= kWindow.hi; ++d) {
      const long n = brute_count(d, 2);
      EXPECT_EQ(cone_p.at(0, d), (ModuleDescriptor{0, std::vector<int>(n, 1)})) << d;
      EXPECT_EQ(unit.at(0, d), (ModuleDescriptor{n, {}})) << d;
    }
    EXPECT_EQ(cone_p.entries.size(), unit.entries.size());
    EXPECT_TRUE(value_homology(evaluate("cone(1)", h), kWindow).is_zero());
    EXPECT_TRUE(value_homology(evaluate("push_g(telescope(p))", h), kWindow).is_zero());
    EXPECT_TRUE(value_homology(evaluate("push_h(cone(p))", h), kWindow).is_zero());
    EXPECT_EQ(value_homology(evaluate("restrict_h(unit_Q)", h), kWindow),
              value_homology(evaluate("telescope(p)", h), kWindow));
    EXPECT_EQ(value_homology(evaluate("restrict_g(unit_Fp)", h), kWindow), cone_p);
    HomologyTable moved = value_homology(evaluate("shift(2, internal_shift(4, unit))", h), kWindow);
    for (long d = 0; d <= kWindow.hi; ++d) EXPECT_EQ(moved.at(2, d).free_rank, brute_count(d - 4, 2)) << d;
    EXPECT_EQ(moved.entries.size(), unit.entries.size() - 2);  // degrees 30 and 32 drop out
  }
}

TEST(Catalog, AddDeduplicates) {
  Catalog c = from(3, {"unit"});
  EXPECT_EQ(c.add_object("unit"), 0);
  const int a = c.add_object("cone(p)");
  EXPECT_EQ(c.add_object("cone(p, unit)"), a);
  EXPECT_EQ(c.add_object(" cone( p ,unit ) "), a);
  EXPECT_EQ(c.size(), 2);
  EXPECT_EQ(c.object(a).expression, "cone(p, unit)");
  EXPECT_EQ(kind_of([&] { c.add_object("sum(unit, unit_Q)"); }), ErrorKind::kEvaluationError);
  EXPECT_EQ(c.size(), 2);
}

TEST(Catalog, ProvenanceReevaluates) {
  for (std::uint32_t p : {2u, 3u}) {
    Catalog c = Catalog::seed(Homes::standard(p), kWindow);
    for (const auto& o : c.objects()) {
      Value again = evaluate(o.expression, c.homes());
      EXPECT_EQ(value_homology(again, kWindow), value_homology(o.value, kWindow)) << o.expression;
    }
  }
}

TEST(Catalog, HashTracksContents) {
  Catalog a = Catalog::seed(Homes::standard(3), kWindow);
  Catalog b = Catalog::seed(Homes::standard(3), kWindow);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  b.add_object("cone(x2)");
  EXPECT_NE(a.hash(), b.hash());
  EXPECT_NE(a.hash(), Catalog::seed(Homes::standard(2), kWindow).hash());
  EXPECT_NE(a.hash(), Catalog::seed(Homes::standard(3), DegreeWindow{0, 16, -8, 8}).hash());
}

TEST(Nullity, SeedExamples) {
  for (std::uint32_t p : {2u, 3u}) {
    Catalog c = Catalog::seed(Homes::standard(p), kWindow);
    NullityMatrix n = compute_nullity(c);
    const int unit = id(c, "unit"), cone_p = id(c, "cone(p)"), tel = id(c, "telescope(p)");
    const int f = id(c, "fiber_telescope(p)");
    EXPECT_TRUE(n.zero(cone_p, tel));
    EXPECT_TRUE(n.zero(f, tel));
    EXPECT_FALSE(n.zero(unit, unit));
    EXPECT_TRUE(n.inconclusive().empty());
    for (int i = 0; i < n.size(); ++i) {
      // The unit row is plain nullity of the object.
      EXPECT_EQ(n.entries[unit][i].status, value_is_zero(c.object(i).value, kWindow).status) << i;
      for (int j = 0; j < n.size(); ++j) {
        EXPECT_EQ(n.entries[i][j].status, n.entries[j][i].status);
      }
    }
  }
}

TEST(Nullity, Routing) {
  Catalog c = from(3, {"cone(p)", "telescope(p)", "unit_Fp", "unit_Q", "cone(x1, unit_Fp)"});
  Homes h = c.homes();
  auto zero = [&](int i, int j) {
    return routed_nullity(c.object(i).value, c.object(j).value, h, kWindow).is_zero();
  };
  EXPECT_FALSE(zero(0, 2));  // g_•cone(p) ∧ F_p = F_p ⊕ ΣF_p
  EXPECT_TRUE(zero(1, 2));
  EXPECT_TRUE(zero(0, 3));
  EXPECT_FALSE(zero(1, 3));
  EXPECT_FALSE(zero(2, 4));
  EXPECT_EQ(zero(2, 0), zero(0, 2));
  EXPECT_EQ(kind_of([&] { routed_nullity(c.object(2).value, c.object(3).value, h, kWindow); }),
            ErrorKind::kUnroutablePair);
  Catalog bad = from(3, {"unit_Fp", "unit_Q"});
  EXPECT_EQ(kind_of([&] { compute_nullity(bad); }), ErrorKind::kUnroutablePair);
}

TEST(Nullity, RoutingMatchesRestriction) {
  // A ∧ g^•B and g_•A ∧ B vanish together; same for h.
  for (std::uint32_t p : {2u, 3u}) {
    Homes h = Homes::standard(p);
    for (const auto& a : Catalog::seed_expressions()) {
      Value va = evaluate(a, h);
      for (const char* b : {"unit_Fp", "cone(x1, unit_Fp)"}) {
        Nullity routed = routed_nullity(va, evaluate(b, h), h, kWindow);
        Nullity direct = value_is_zero(evaluate("tensor(" + a + ", restrict_g(" + b + "))", h), kWindow);
        EXPECT_EQ(routed.is_zero(), direct.is_zero()) << a << " " << b;
      }
      Nullity routed = routed_nullity(va, evaluate("unit_Q", h), h, kWindow);
      Nullity direct = value_is_zero(evaluate("tensor(" + a + ", restrict_h(unit_Q))", h), kWindow);
      EXPECT_EQ(routed.is_zero(), direct.is_zero()) << a;
    }
  }
}

TEST(Nullity, WindowRefinementIsMonotone) {
  for (std::uint32_t p : {2u, 3u}) {
    Catalog c = Catalog::seed(Homes::standard(p), kWindow);
    NullityMatrix small = compute_nullity(c, DegreeWindow{0, 6, -2, 2});
    NullityMatrix large = compute_nullity(c, DegreeWindow{-16, 48, -8, 8});
    for (int i = 0; i < c.size(); ++i) {
      for (int j = 0; j < c.size(); ++j) {
        if (small.entries[i][j].is_witness()) EXPECT_TRUE(large.entries[i][j].is_witness());
        if (large.zero(i, j)) EXPECT_TRUE(small.zero(i, j));
      }
    }
  }
}

TEST(Preorder, SeedExamples) {
  for (std::uint32_t p : {2u, 3u}) {
    Catalog c = Catalog::seed(Homes::standard(p), kWindow);
    ObservedOrder o = observed_preorder(compute_nullity(c));
    const int zero = id(c, "zero"), unit = id(c, "unit"), cone_p = id(c, "cone(p)"), tel = id(c, "telescope(p)");
    for (int i = 0; i < c.size(); ++i) {
      EXPECT_TRUE(o.less_equal(zero, i));
      EXPECT_TRUE(o.less_equal(i, unit));
      EXPECT_TRUE(o.less_equal(i, i));
      for (int j = 0; j < c.size(); ++j) {
        for (int k = 0; k < c.size(); ++k) {
          if (o.less_equal(i, j) && o.less_equal(j, k)) EXPECT_TRUE(o.less_equal(i, k));
        }
      }
    }
    EXPECT_FALSE(o.less_equal(cone_p, tel));
    EXPECT_FALSE(o.less_equal(tel, cone_p));
    EXPECT_TRUE(o.equivalent(cone_p, id(c, "fiber_telescope(p)")));
    EXPECT_TRUE(o.equivalent(cone_p, id(c, "quotient_telescope(p)")));
    EXPECT_TRUE(o.equivalent(unit, id(c, "cone(x1)")));
    EXPECT_TRUE(o.equivalent(unit, id(c, "shift(1, unit)")));
    EXPECT_EQ(o.classes.size(), 4u);
  }
}

TEST(Preorder, RejectsInconclusive) {
  NullityMatrix n;
  n.entries.assign(2, std::vector<Nullity>(2));
  n.entries[0][1].status = n.entries[1][0].status = Nullity::Status::kInconclusive;
  EXPECT_EQ(kind_of([&] { observed_preorder(n); }), ErrorKind::kInconclusiveNullity);
}

TEST(Preorder, HomesEmbed) {
  // The order among rational (resp. F_p) objects matches the order of their restrictions.
  for (std::uint32_t p : {2u, 3u}) {
    for (const auto& objs : std::vector<std::vector<std::string>>{
             {"zero_Q", "unit_Q", "cone(x1, unit_Q)", "shift(3, unit_Q)"},
             {"zero_Fp", "unit_Fp", "cone(x1, unit_Fp)", "cone(x1^2, unit_Fp)", "shift(1, unit_Fp)"}}) {
      const bool rational = objs[0] == "zero_Q";
      Catalog home = from(p, objs);
      std::vector<std::string> restricted;
      for (const auto& e : objs) restricted.push_back((rational ? "restrict_h(" : "restrict_g(") + e + ")");
      Catalog zp = from(p, restricted);
      EXPECT_EQ(observed_preorder(compute_nullity(home)).leq, observed_preorder(compute_nullity(zp)).leq);
    }
  }
}

TEST(Closure, Examples) {
  Catalog unit = from(3, {"unit"});
  NullityMatrix n = compute_nullity(unit);
  ClosureReport r = close_under(unit, {ClosureOp::kTensor}, 10, n);
  EXPECT_EQ(r.added, 0);
  EXPECT_EQ(unit.size(), 1);

  Catalog pair = from(3, {"cone(p)", "telescope(p)"});
  NullityMatrix m = compute_nullity(pair);
  r = close_under(pair, {ClosureOp::kSum}, 10, m);
  EXPECT_EQ(r.added, 1);
  EXPECT_EQ(pair.object(2).expression, "sum(cone(p, unit), telescope(p, unit))");
  EXPECT_EQ(m.size(), 3);
  // The stored column of the sum agrees with a direct computation.
  NullityMatrix direct = compute_nullity(pair);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(m.entries[i][2].status, direct.entries[i][2].status);

  Catalog capped = from(3, {"cone(p)", "telescope(p)"});
  NullityMatrix k = compute_nullity(capped);
  r = close_under(capped, {ClosureOp::kSum}, 2, k);
  EXPECT_TRUE(r.cap_exceeded);
  EXPECT_EQ(capped.size(), 2);
  EXPECT_EQ(kind_of([&] { close_under(capped, {ClosureOp::kSum}, 1, k); }), ErrorKind::kInvalidArgument);
}

TEST(Closure, SeedStaysSmall) {
  for (std::uint32_t p : {2u, 3u}) {
    Catalog c = Catalog::seed(Homes::standard(p), kWindow);
    NullityMatrix n = compute_nullity(c);
    ClosureReport r =
        close_under(c, {ClosureOp::kSum, ClosureOp::kTensor, ClosureOp::kShift, ClosureOp::kCone}, 40, n);
    EXPECT_FALSE(r.cap_exceeded);
    EXPECT_LE(c.size(), 40);
    EXPECT_EQ(n.size(), c.size());
  }
}

TEST(Closure, Deterministic) {
  auto run = [] {
    Catalog c = from(3, {"zero", "cone(x1)", "cone(p)", "telescope(p)"});
    NullityMatrix n = compute_nullity(c);
    close_under(c, {ClosureOp::kSum, ClosureOp::kTensor, ClosureOp::kCone}, 12, n);
    return catalog_to_json(c, &n).dump();
  };
  EXPECT_EQ(run(), run());
}

TEST(Lattice, TwoObjects) {
  Catalog c = from(3, {"zero", "unit"});
  ObservedLattice l = observed_lattice(c, compute_nullity(c));
  EXPECT_EQ(l.lattice.size(), 2);
  EXPECT_TRUE(validate(l.lattice).ok());
  EXPECT_EQ(l.lattice.tensor_table(), two_element_lattice().tensor_table());
  EXPECT_EQ(l.catalog_hash, c.hash());
}

TEST(Lattice, SeedIsBooleanSquare) {
  for (std::uint32_t p : {2u, 3u}) {
    Catalog c = Catalog::seed(Homes::standard(p), kWindow);
    NullityMatrix n = compute_nullity(c);
    ObservedLattice l = observed_lattice(c, n);
    const FiniteTensorLattice& L = l.lattice;
    ASSERT_TRUE(validate(L).ok());
    EXPECT_TRUE(is_associative(L));
    EXPECT_EQ(L.size(), 4);
    const int cone_p = l.class_of_object(id(c, "cone(p)")), tel = l.class_of_object(id(c, "telescope(p)"));
    EXPECT_EQ(L.join(cone_p, tel), L.max());
    EXPECT_EQ(L.tensor(cone_p, tel), L.bottom());
    EXPECT_EQ(L.max(), l.class_of_object(id(c, "unit")));
    EXPECT_EQ(L.bottom(), l.class_of_object(id(c, "zero")));
    EXPECT_EQ(dl_elements(L).size(), 4u);
    EXPECT_EQ(ba_elements(L).size(), 4u);
    EXPECT_EQ(complement_op(L, cone_p), tel);
  }
}

TEST(Lattice, MissingJoin) {
  Catalog c = from(3, {"zero", "cone(p)", "telescope(p)"});
  EXPECT_EQ(kind_of([&] { observed_lattice(c, compute_nullity(c)); }), ErrorKind::kMissingJoinWitness);
  Catalog mixed = from(3, {"unit", "unit_Fp"});
  EXPECT_EQ(kind_of([&] { observed_lattice(mixed, compute_nullity(mixed)); }), ErrorKind::kUnroutablePair);
}

TEST(Lattice, AdjointTransposition) {
  // ⟨g^•X⟩ ≤ ⟨Y⟩ iff ⟨X⟩ ≤ ⟨g_•Y⟩ for X over F_p and Y over Z_(p).
  for (std::uint32_t p : {2u, 3u}) {
    const std::vector<std::string> xs = {"zero_Fp", "unit_Fp", "cone(x1, unit_Fp)"};
    const auto& ys = Catalog::seed_expressions();
    std::vector<std::string> zp_objs(ys.begin(), ys.end()), fp_objs = xs;
    for (const auto& x : xs) zp_objs.push_back("restrict_g(" + x + ")");
    for (const auto& y : ys) fp_objs.push_back("push_g(" + y + ")");
    Catalog zp = from(p, zp_objs), fpc = from(p, fp_objs);
    ObservedOrder oz = observed_preorder(compute_nullity(zp));
    ObservedOrder of = observed_preorder(compute_nullity(fpc));
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        const bool left = oz.less_equal(id(zp, "restrict_g(" + x + ")"), id(zp, y));
        const bool right = of.less_equal(id(fpc, x), id(fpc, "push_g(" + y + ")"));
        EXPECT_EQ(left, right) << x << " " << y;
      }
    }
  }
}

TEST(Persistence, RoundTrip) {
  for (std::uint32_t p : {2u, 3u}) {
    Catalog c = Catalog::seed(Homes::standard(p), kWindow);
    NullityMatrix n = compute_nullity(c);
    ObservedLattice l = observed_lattice(c, n);
    const std::string text = catalog_to_json(c, &n, &l).dump(2);
    LoadedCatalog back = catalog_from_json(Json::parse(text));
    ASSERT_TRUE(back.nullity && back.lattice);
    EXPECT_EQ(catalog_to_json(back.catalog, &*back.nullity, &*back.lattice).dump(2), text);
    EXPECT_EQ(back.catalog.hash(), c.hash());
    EXPECT_EQ(back.lattice->lattice, l.lattice);
    // Recomputing from the reloaded expressions gives the stored matrix.
    EXPECT_EQ(nullity_matrix_to_json(compute_nullity(back.catalog)).dump(), nullity_matrix_to_json(n).dump());
  }
}

TEST(Persistence, RejectsTampering) {
  Catalog c = from(3, {"zero", "unit"});
  Json j = catalog_to_json(c);
  j["objects"][1]["expression"] = "cone(p)";
  EXPECT_EQ(kind_of([&] { catalog_from_json(j); }), ErrorKind::kParseError);
  Json k = catalog_to_json(c);
  k.erase("shape");
  EXPECT_EQ(kind_of([&] { catalog_from_json(k); }), ErrorKind::kParseError);
}
