#include <gtest/gtest.h>

#include <random>

#include "bousfield/error.hpp"
#include "bousfield/graded_ring.hpp"

using namespace bousfield;

namespace {

SpecPtr spec_with(std::uint32_t p, int n) {
  return make_spec(CoefficientRing::plocal(p), ExponentRule{{}, n}, DegreeRule{});
}

AlgebraElement x(const SpecPtr& s, int i) { return AlgebraElement::variable(s, i); }

AlgebraElement random_element(const SpecPtr& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> var(1, 3), exp(0, 2), coeff(-4, 4), terms(0, 3);
  AlgebraElement out(s);
  const int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m({{var(rng), exp(rng)}, {var(rng), exp(rng)}});
    out.accumulate(m, s->ring().from_int(coeff(rng)));
  }
  return out;
}

// Oracle: coefficients of prod_{i<=m} (1 + t^{deg x_i} + ... + t^{(n_i-1) deg x_i}) up to t^hi.
std::vector<long> generating_function(const AlgebraSpec& spec, int m, long hi) {
  std::vector<long> poly(hi + 1, 0);
  poly[0] = 1;
  for (int i = 1; i <= m; ++i) {
    std::vector<long> next(hi + 1, 0);
    for (long d = 0; d <= hi; ++d) {
      if (poly[d] == 0) continue;
      for (int e = 0; e < spec.exponent(i); ++e) {
        long nd = d + e * spec.degree(i);
        if (nd <= hi) next[nd] += poly[d];
      }
    }
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

TEST(MonomialBasis, DegreeZeroIsUnit) {
  auto s = spec_with(3, 2);
  auto b = monomial_basis(*s, 0);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_TRUE(b[0].is_unit());
}

TEST(MonomialBasis, SixWithSquareZeroGenerators) {
  auto b = monomial_basis(*spec_with(3, 2), 6);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], Monomial({{1, 1}, {2, 1}}));
}

TEST(MonomialBasis, FourWithCubeZeroGenerators) {
  auto b = monomial_basis(*spec_with(3, 3), 4);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0], Monomial::variable(2));
  EXPECT_EQ(b[1], Monomial::variable(1, 2));
}

TEST(MonomialBasis, NegativeAndOddDegreesEmpty) {
  auto s = spec_with(3, 2);
  EXPECT_TRUE(monomial_basis(*s, -2).empty());
  EXPECT_TRUE(monomial_basis(*s, 7).empty());
}

TEST(RequiredVariables, Examples) {
  auto s = spec_with(3, 2);
  EXPECT_EQ(required_variables(*s, 10, 0), 3);
  EXPECT_EQ(required_variables(*s, 1, 0), 0);
  EXPECT_EQ(required_variables(*s, 10, 6), 2);
}

TEST(AlgebraMul, TruncationAndUnit) {
  auto s = spec_with(3, 2);
  EXPECT_TRUE(algebra_mul(x(s, 1), x(s, 1)).is_zero());
  AlgebraElement a = algebra_add(x(s, 1), AlgebraElement::from_int(s, 5));
  EXPECT_EQ(algebra_mul(AlgebraElement::one(s), a), a);
}

TEST(AlgebraMul, SquareOfSum) {
  auto s = spec_with(3, 2);
  AlgebraElement sum = algebra_add(x(s, 1), x(s, 2));
  AlgebraElement expected = AlgebraElement::monomial(s, Monomial({{1, 1}, {2, 1}}), s->ring().from_int(2));
  EXPECT_EQ(algebra_mul(sum, sum), expected);
}

TEST(AlgebraMul, SpecMismatch) {
  auto s = spec_with(3, 2);
  auto t = spec_with(5, 2);
  try {
    algebra_mul(x(s, 1), x(t, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSpecMismatch);
  }
}

TEST(MonomialOrder, LexOnDenseExponents) {
  EXPECT_LT(Monomial::variable(2), Monomial::variable(1));
  EXPECT_LT(Monomial(), Monomial::variable(3));
  EXPECT_LT(Monomial({{1, 1}, {3, 1}}), Monomial({{1, 1}, {2, 1}}));
}

class RingLaws : public ::testing::TestWithParam<int> {};

TEST_P(RingLaws, AssociativeCommutativeHomogeneous) {
  std::mt19937_64 rng(GetParam());
  for (int n : {2, 3}) {
    auto s = spec_with(GetParam() % 2 ? 3 : 2, n);
    auto a = random_element(s, rng), b = random_element(s, rng), c = random_element(s, rng);
    EXPECT_EQ(algebra_mul(a, b), algebra_mul(b, a));
    EXPECT_EQ(algebra_mul(algebra_mul(a, b), c), algebra_mul(a, algebra_mul(b, c)));
    EXPECT_EQ(algebra_mul(a, algebra_add(b, c)), algebra_add(algebra_mul(a, b), algebra_mul(a, c)));
    // Homogeneous components multiply into the summed degree.
    for (const auto& [ma, ca] : a.terms()) {
      for (const auto& [mb, cb] : b.terms()) {
        auto prod = algebra_mul(AlgebraElement::monomial(s, ma, ca), AlgebraElement::monomial(s, mb, cb));
        if (prod.is_zero()) continue;
        EXPECT_TRUE(prod.is_homogeneous());
        EXPECT_EQ(prod.degree(), ma.degree(*s) + mb.degree(*s));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RingLaws, ::testing::Range(0, 30));

TEST(MonomialBasis, GeneratingFunctionIdentity) {
  for (int n : {2, 3, 4}) {
    for (DegreeRule rule : {DegreeRule{}, DegreeRule{DegreeRule::Kind::kLinear, 3}}) {
      auto s = make_spec(CoefficientRing::fp(3), ExponentRule{{3, 2}, n}, rule);
      const long hi = 64;
      auto gf = generating_function(*s, required_variables(*s, hi, 0), hi);
      for (long d = 0; d <= hi; ++d) {
        const auto& b = s->basis(d);
        EXPECT_EQ(static_cast<long>(b.size()), gf[d]) << "n=" << n << " d=" << d;
        EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
        for (const auto& m : b) {
          EXPECT_EQ(m.degree(*s), d);
          EXPECT_TRUE(m.legal(*s));
        }
      }
    }
  }
}

TEST(AlgebraSpec, RejectsBadRules) {
  EXPECT_THROW(AlgebraSpec(CoefficientRing::fp(3), ExponentRule{{1}, 2}), Error);
  EXPECT_THROW(AlgebraSpec(CoefficientRing::fp(3), ExponentRule{}, DegreeRule{DegreeRule::Kind::kLinear, 0}), Error);
}
