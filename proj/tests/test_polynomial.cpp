#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "trefftz/polynomial.hpp"

using namespace trefftz;
using trefftz::testing::Rng;

namespace {

Poly3 mono(int i, int j, int k, double c = 1.0) { return Poly3({i, j, k}, c); }

}  // namespace

TEST(Poly3, DifferenceOfSquares) {
  const Poly3 x = Poly3::x();
  const Poly3 y = Poly3::y();
  EXPECT_EQ((x + y) * (x - y), mono(2, 0, 0) - mono(0, 2, 0));
}

TEST(Poly3, MultiplicativeIdentity) {
  EXPECT_EQ(Poly3(1.0) * Poly3::radius_squared(), Poly3::radius_squared());
}

TEST(Poly3, DegreeIsAdditive) {
  const Poly3 sq = Poly3::x() * Poly3::x();
  EXPECT_EQ(sq, mono(2, 0, 0));
  EXPECT_EQ(sq.degree(), 2);
  EXPECT_EQ(Poly3().degree(), -1);
}

TEST(Poly3, CanonicalFormDropsCancelledTerms) {
  Poly3 p = Poly3::x() - Poly3::x();
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p, Poly3());
  EXPECT_EQ(Poly3(0.0).size(), 0u);
  EXPECT_EQ((Poly3::y() * 0.0).size(), 0u);
}

TEST(Poly3, Diff) {
  const Poly3 p = mono(2, 1, 0);
  EXPECT_EQ(diff(p, 0), mono(1, 1, 0, 2.0));
  EXPECT_TRUE(diff(p, 2).is_zero());
  EXPECT_EQ(diff(Poly3::radius_squared(), 1), mono(0, 1, 0, 2.0));
  EXPECT_THROW(diff(p, 3), std::invalid_argument);
}

TEST(Poly3, Eval) {
  EXPECT_DOUBLE_EQ(Poly3::radius_squared().eval({1, 2, 2}), 9.0);
  EXPECT_DOUBLE_EQ(mono(1, 1, 0).eval({3, -2, 5}), -6.0);
  EXPECT_DOUBLE_EQ(Poly3(1.0).eval({0.3, -7, 11}), 1.0);
}

TEST(Poly3, GradedLexOrder) {
  const Poly3 p = mono(0, 0, 2) + mono(2, 0, 0) + mono(0, 1, 0) + Poly3(3.0) + mono(1, 1, 0);
  std::vector<Monomial> order;
  for (const auto& [m, c] : p.terms()) order.push_back(m);
  const std::vector<Monomial> expected{{0, 0, 0}, {0, 1, 0}, {0, 0, 2}, {1, 1, 0}, {2, 0, 0}};
  EXPECT_EQ(order, expected);
  EXPECT_EQ(to_text(mono(0, 1, 0, 0.5) + Poly3(3.0)), "0 0 0 3\n0 1 0 0.5\n");
}

TEST(Poly3, Homogeneity) {
  EXPECT_EQ(Poly3::radius_squared().homogeneous_degree(), 2);
  EXPECT_EQ((Poly3::radius_squared() + Poly3::x()).homogeneous_degree(), std::nullopt);
  EXPECT_EQ(Poly3().homogeneous_degree(), std::nullopt);
}

TEST(Poly3, RejectsNegativeExponent) { EXPECT_THROW(Poly3({-1, 0, 0}, 1.0), std::invalid_argument); }

TEST(Poly3Property, MultiplicationCommutes) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const Poly3 p = rng.poly(4, 6);
    const Poly3 q = rng.poly(4, 6);
    const Poly3 pq = p * q;
    const Poly3 qp = q * p;
    ASSERT_EQ(pq.size(), qp.size());
    for (const auto& [m, c] : pq.terms()) EXPECT_NEAR(c, qp.coefficient(m), 1e-15);
  }
}

TEST(Poly3Property, Leibniz) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const Poly3 p = rng.poly(4, 6);
    const Poly3 q = rng.poly(4, 6);
    const int a = rng.integer(0, 2);
    const Poly3 lhs = diff(p * q, a);
    const Poly3 rhs = diff(p, a) * q + p * diff(q, a);
    const Poly3 d = lhs - rhs;
    EXPECT_LE(d.max_abs_coefficient(), 1e-13 * std::max(1.0, lhs.max_abs_coefficient()));
  }
}

TEST(Poly3Property, EvaluationIsMultiplicative) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Poly3 p = rng.poly(5, 8);
    const Poly3 q = rng.poly(5, 8);
    const Vec3 x = rng.vec(-1.5, 1.5);
    const double expected = p.eval(x) * q.eval(x);
    EXPECT_NEAR((p * q).eval(x), expected, 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST(Poly3Property, TextRoundTripIsExact) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const Poly3 p = rng.poly(6, 10);
    std::istringstream is(to_text(p));
    EXPECT_EQ(read_text(is), p);
  }
}

TEST(VecPoly3, FieldOperatorExamples) {
  const VecPoly3 radial{Poly3::x(), Poly3::y(), Poly3::z()};
  EXPECT_EQ(divergence(radial), Poly3(3.0));

  const VecPoly3 rot{-Poly3::y(), Poly3::x(), Poly3()};
  EXPECT_EQ(curl(rot), VecPoly3(Poly3(), Poly3(), Poly3(2.0)));

  const VecPoly3 v{Poly3::radius_squared(), Poly3(), Poly3()};
  EXPECT_EQ(laplacian(v), VecPoly3(Poly3(6.0), Poly3(), Poly3()));
}

TEST(VecPoly3Property, DivCurlAndCurlGradVanishExactly) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    // integer coefficients keep the cancellation exact
    VecPoly3 v = rng.vecpoly(5, 8);
    for (int i = 0; i < 3; ++i) {
      Poly3 r;
      for (const auto& [m, c] : v[i].terms()) r.add_term(m, std::round(c * 16));
      v[i] = r;
    }
    EXPECT_TRUE(divergence(curl(v)).is_zero());
    EXPECT_TRUE(curl(gradient(v[0])).is_zero());
  }
}

TEST(VecPoly3, RigidFieldMatchesDefinition) {
  Rng rng(6);
  const Vec3 a = rng.vec();
  const Vec3 b = rng.vec();
  const Vec3 x0 = rng.vec();
  const VecPoly3 r = VecPoly3::rigid(a, b, x0);
  for (int t = 0; t < 20; ++t) {
    const Vec3 x = rng.vec(-3, 3);
    EXPECT_LT((r.eval(x) - (a + b.cross(x - x0))).norm(), 1e-14);
  }
  EXPECT_TRUE(divergence(r).is_zero());
}

TEST(JacobianPoly, MatchesComponentDerivatives) {
  Rng rng(7);
  const VecPoly3 v = rng.vecpoly(4, 6);
  const JacobianPoly jac(v);
  const Vec3 x = rng.vec();
  const Mat3 j = jac.eval(x);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) EXPECT_NEAR(j(a, b), diff(v[a], b).eval(x), 1e-14);
  }
}
