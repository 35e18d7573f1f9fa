#include <gtest/gtest.h>

#include <random>

#include "bousfield/base_change.hpp"
#include "bousfield/error.hpp"
#include "bousfield/random_complex.hpp"
#include "support.hpp"

using namespace bousfield;
using namespace testsupport;

namespace {

const DegreeWindow kWindow{0, 24, -6, 6};

DegreeWindow widen(const DegreeWindow& w, int by) { return {w.lo, w.hi, w.c_lo - by, w.c_hi + by}; }

RandomComplexOptions small() {
  RandomComplexOptions o;
  o.max_pieces = 2;
  o.max_chain_span = 3;
  return o;
}

// Divides each differential by a random power of p; d∘d = 0 is preserved.
FreeComplex with_denominators(const FreeComplex& y, std::uint32_t p, std::mt19937_64& rng) {
  const CoefficientRing& q = y.spec()->ring();
  std::map<int, AlgebraMatrix> diffs;
  for (const auto& [c, m] : y.differential_map()) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), p, rng() % 3);
    const Scalar factor = q.normalize(mpz_class(1), den);
    diffs.emplace(c, matrix_scale(m, AlgebraElement::constant(y.spec(), factor)));
  }
  return FreeComplex(y.spec(), y.generator_map(), std::move(diffs));
}

}  // namespace

TEST(RingMap, Construction) {
  auto s = plocal(3);
  EXPECT_EQ(*RingMap::g(s).target(), *fp(3));
  EXPECT_EQ(*RingMap::h(s).target(), *rational());
  try {
    RingMap::g(fp(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonPLocalInput);
  }
  EXPECT_THROW(RingMap::h(rational()), Error);
}

TEST(RingMap, JsonRoundTrip) {
  auto s = plocal(2);
  for (const RingMap& f : {RingMap::g(s), RingMap::h(s)}) {
    RingMap back = ring_map_from_json(ring_map_to_json(f), s);
    EXPECT_EQ(back.kind(), f.kind());
    EXPECT_EQ(*back.target(), *f.target());
  }
  EXPECT_THROW(ring_map_from_json(Json{{"map", "X"}, {"prime", 3}}, s), Error);
}

TEST(RingMap, GenericImages) {
  auto s = plocal(3);
  RingMap kill = RingMap::generic(s, s, {AlgebraElement::zero(s)});
  EXPECT_TRUE(kill.apply(el(s, "x1*x2 + 1")) == el(s, "1"));
  RingMap swap = RingMap::generic(s, s, {el(s, "2*x1")});
  EXPECT_EQ(swap.apply(el(s, "x1*x2")), el(s, "2*x1*x2"));
  EXPECT_THROW(RingMap::generic(s, s, {el(s, "x2")}), Error);
  EXPECT_THROW(RingMap::generic(s, s, {el(s, "x1 + 1")}), Error);
}

TEST(Pushforward, Examples) {
  for (std::uint32_t p : {2u, 3u}) {
    auto s = plocal(p);
    RingMap g = RingMap::g(s), h = RingMap::h(s);
    FreeComplex gp = pushforward(g, cone_of(s, "p"));
    FreeComplex unit = FreeComplex::unit(g.target());
    EXPECT_EQ(homology(gp, kWindow), homology(direct_sum(unit, shift(unit, 1)), kWindow));
    EXPECT_EQ(pushforward(g, FreeComplex::unit(s)), unit);
    EXPECT_EQ(pushforward(h, FreeComplex::unit(s)), FreeComplex::unit(h.target()));
    EXPECT_TRUE(is_zero_in_window(pushforward(h, cone_of(s, "p")), DegreeWindow{}).is_zero());
    EXPECT_THROW(pushforward(g, FreeComplex::unit(plocal(p == 2 ? 3 : 2))), Error);
  }
}

TEST(Pushforward, PreservesConstructions) {
  std::mt19937_64 rng(41);
  for (std::uint32_t p : {2u, 3u}) {
    auto s = plocal(p);
    for (const RingMap& f : {RingMap::g(s), RingMap::h(s)}) {
      for (int i = 0; i < 8; ++i) {
        FreeComplex x = random_complex(s, rng, small());
        FreeComplex y = random_complex(s, rng, small());
        auto table = [](const FreeComplex& c) { return homology(c, kWindow); };
        EXPECT_EQ(table(pushforward(f, direct_sum(x, y))),
                  table(direct_sum(pushforward(f, x), pushforward(f, y))));
        EXPECT_EQ(table(pushforward(f, shift(x, 2))), table(shift(pushforward(f, x), 2)));
        EXPECT_EQ(table(pushforward(f, tensor(x, y))), table(tensor(pushforward(f, x), pushforward(f, y))));
        ChainMap phi = multiplication_map(x, el(s, "x1 + p*x1"));
        EXPECT_EQ(table(pushforward(f, cone(phi))), table(cone(pushforward(f, phi))));
      }
    }
  }
}

TEST(RestrictG, UnitIsConeOfP) {
  for (std::uint32_t p : {2u, 3u}) {
    FreeComplex w = restrict_g(FreeComplex::unit(fp(p)));
    EXPECT_EQ(w, cone_of(plocal(p), "p"));
  }
  EXPECT_THROW(restrict_g(FreeComplex::unit(plocal(3))), Error);
}

TEST(RestrictG, ShiftCompatible) {
  std::mt19937_64 rng(5);
  auto s = fp(3);
  for (int i = 0; i < 10; ++i) {
    FreeComplex x = random_complex(s, rng, small());
    EXPECT_EQ(homology(restrict_g(shift(x, 1)), kWindow), homology(shift(restrict_g(x), 1), kWindow));
  }
}

TEST(RestrictG, PushforwardDoublesHomology) {
  std::mt19937_64 rng(2024);
  for (std::uint32_t p : {2u, 3u}) {
    auto s = fp(p);
    for (int i = 0; i < 20; ++i) {
      FreeComplex x = random_complex(s, rng, small());
      FreeComplex w = restrict_g(x);
      FreeComplex back = pushforward(RingMap::g(w.spec()), w);
      HomologyTable hx = homology(x, widen(kWindow, 1));
      HomologyTable expected = add_tables(shift_table(hx, 0, kWindow), shift_table(hx, 1, kWindow));
      EXPECT_EQ(homology(back, kWindow), expected) << "p=" << p << " i=" << i;
    }
  }
}

TEST(RestrictG, RationalizationVanishes) {
  // g^•X is p-torsion, so inverting p kills it.
  std::mt19937_64 rng(8);
  auto s = fp(3);
  for (int i = 0; i < 10; ++i) {
    FreeComplex w = restrict_g(random_complex(s, rng, small()));
    EXPECT_TRUE(is_zero_in_window(pushforward(RingMap::h(w.spec()), w), kWindow).is_zero());
  }
}

TEST(RestrictH, UnitIsTelescopeOfP) {
  auto q = rational();
  IndComplex t = restrict_h(FreeComplex::unit(q), 3);
  EXPECT_TRUE(t.is_uniform());
  EXPECT_EQ(t.stage(0), FreeComplex::unit(plocal(3)));
  ASSERT_NE(t.map(0).component(0).find(0, 0), nullptr);
  EXPECT_EQ(*t.map(0).component(0).find(0, 0), el(plocal(3), "3"));
  EXPECT_TRUE(ind_is_zero(restrict_h(FreeComplex::zero(q), 3), kWindow).is_zero());
}

TEST(RestrictH, LatticeIsPLocal) {
  std::mt19937_64 rng(3);
  auto q = rational();
  for (int i = 0; i < 10; ++i) {
    FreeComplex y = with_denominators(random_complex(q, rng, small()), 3, rng);
    FreeComplex lattice = p_local_lattice(y, 3);
    EXPECT_EQ(lattice.spec()->ring().kind(), RingKind::kPLocal);
    EXPECT_EQ(homology(pushforward(RingMap::h(lattice.spec()), lattice), kWindow), homology(y, kWindow));
  }
}

TEST(RestrictH, ExactnessOfRestriction) {
  std::mt19937_64 rng(99);
  auto q = rational();
  for (std::uint32_t p : {2u, 3u}) {
    for (int i = 0; i < 12; ++i) {
      FreeComplex y = with_denominators(random_complex(q, rng, small()), p, rng);
      IndComplex r = restrict_h(y, p);
      IndHomology h = telescope_homology(r, kWindow);
      EXPECT_TRUE(h.report.inconclusive.empty());
      EXPECT_EQ(h.table, homology(y, kWindow));
      EXPECT_EQ(ind_is_zero(r, kWindow).is_zero(), is_zero_in_window(y, kWindow).is_zero());
    }
  }
}

TEST(MixedTensor, Examples) {
  for (std::uint32_t p : {2u, 3u}) {
    auto s = plocal(p);
    auto q = rational();
    EXPECT_TRUE(mixed_tensor(cone_of(s, "p"), FreeComplex::unit(q), kWindow).is_zero());
    std::mt19937_64 rng(p);
    FreeComplex y = random_complex(q, rng, small());
    EXPECT_EQ(mixed_tensor(FreeComplex::unit(s), y, kWindow), homology(y, kWindow));
    HomologyTable t = mixed_tensor(cone_of(s, "x1"), FreeComplex::unit(q), kWindow);
    for (long d = 0; d <= 24; ++d) {
      const long h0 = brute_count(d, 2, [](const std::vector<int>& e) { return e.empty() || e[0] == 0; });
      const long h1 = brute_count(d - 2, 2, [](const std::vector<int>& e) { return !e.empty() && e[0] == 1; });
      EXPECT_EQ(t.at(0, d), (ModuleDescriptor{h0, {}})) << d;
      EXPECT_EQ(t.at(1, d), (ModuleDescriptor{h1, {}})) << d;
    }
    EXPECT_THROW(mixed_tensor(cone_of(s, "p"), FreeComplex::unit(fp(p)), kWindow), Error);
  }
}

TEST(ProjectionFormula, Examples) {
  for (std::uint32_t p : {2u, 3u}) {
    auto s = plocal(p);
    RingMap g = RingMap::g(s), h = RingMap::h(s);
    std::mt19937_64 rng(p + 10);
    FreeComplex b = random_complex(g.target(), rng, small());
    EXPECT_TRUE(projection_formula_check(g, FreeComplex::unit(s), b, kWindow));
    EXPECT_TRUE(projection_formula_check(g, cone_of(s, "p"), FreeComplex::unit(g.target()), kWindow));
    EXPECT_TRUE(projection_formula_check(h, FreeComplex::unit(s), FreeComplex::unit(h.target()), kWindow));
    EXPECT_TRUE(projection_formula_check(h, cone_of(s, "p"), FreeComplex::unit(h.target()), kWindow));
  }
}

TEST(ProjectionFormula, RandomPairs) {
  std::mt19937_64 rng(777);
  for (std::uint32_t p : {2u, 3u}) {
    auto s = plocal(p);
    for (const RingMap& f : {RingMap::g(s), RingMap::h(s)}) {
      for (int i = 0; i < 50; ++i) {
        FreeComplex a = random_complex(s, rng, small());
        FreeComplex b = random_complex(f.target(), rng, small());
        if (f.kind() == RingMap::Kind::kH) b = with_denominators(b, p, rng);
        ProjectionSides sides = projection_formula_sides(f, a, b, kWindow);
        EXPECT_TRUE(sides.agree()) << f.name() << " p=" << p << " i=" << i << "\n"
                                   << sides.left.to_string() << "\nvs\n" << sides.right.to_string();
      }
    }
  }
}

TEST(ProjectionFormula, AcyclicityTransposition) {
  // f_•A ∧ B ≃ 0 exactly when A ∧ f^•B ≃ 0.
  std::mt19937_64 rng(31);
  for (std::uint32_t p : {2u, 3u}) {
    auto s = plocal(p);
    const std::vector<FreeComplex> as{FreeComplex::unit(s), cone_of(s, "p"), cone_of(s, "x1"), FreeComplex::zero(s)};
    RingMap g = RingMap::g(s), h = RingMap::h(s);
    for (const FreeComplex& a : as) {
      FreeComplex bg = FreeComplex::unit(g.target());
      FreeComplex bh = FreeComplex::unit(h.target());
      EXPECT_EQ(is_zero_in_window(tensor(pushforward(g, a), bg), kWindow).is_zero(),
                is_zero_in_window(tensor(a, restrict_g(bg)), kWindow).is_zero());
      EXPECT_EQ(is_zero_in_window(tensor(pushforward(h, a), bh), kWindow).is_zero(),
                ind_is_zero(ind_tensor(IndComplex::constant(a), restrict_h(bh, p)), kWindow).is_zero());
    }
  }
}
