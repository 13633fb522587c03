// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "chowkit/constructions.hpp"
#include "chowkit/error.hpp"
#include "support.hpp"

namespace chowkit {
namespace {

RingPtr jacobian() { return PresentedRing::make("J", {{"T", 1}}, {Poly::monomial({3})}, 2); }

ProjectiveBundle p_xi() {
  const auto J = jacobian();
  const Element T = J->gen("T");
  return projective_bundle(J, {4, {-T, Rational(1, 2) * T * T, J->zero(), J->zero()}}, "H", "P_xi");
}

TEST(ProjectiveBundle, QuarticRelationSignConvention) {
  const auto pb = p_xi();
  const Element H = pb.total->gen("H");
  const Element T = pb.total->gen("T");
  // c1 = -T gives +H^3 T.
  EXPECT_TRUE((H.pow(4) + H.pow(3) * T + Rational(1, 2) * H.pow(2) * T.pow(2)).is_zero());
  EXPECT_EQ(pb.total->hilbert_function(), (std::vector<std::size_t>{1, 2, 3, 3, 2, 1}));
}

TEST(ProjectiveBundle, PushforwardOfHyperplanePowers) {
  const auto pb = p_xi();
  const Element T = pb.base->gen("T");
  EXPECT_EQ(bundle_pushforward_values(pb, 0), pb.base->one());
  EXPECT_EQ(bundle_pushforward_values(pb, 1), -T);
  EXPECT_EQ(bundle_pushforward_values(pb, 2), Rational(1, 2) * T * T);
  const Element H = pb.total->gen("H");
  EXPECT_EQ(pb.pushforward.apply(H.pow(4)), -T);
}

TEST(ProjectiveBundle, NameClashRejected) {
  const auto J = jacobian();
  EXPECT_THROW(projective_bundle(J, {1, {J->zero()}}, "T", "Bad"), Error);
}

TEST(ProjectiveBundle, PushPullVanishes) {
  const auto pb = p_xi();
  for (int d = 0; d <= pb.base->top_degree(); ++d) {
    for (std::size_t i = 0; i < pb.base->dim(d); ++i) {
      EXPECT_TRUE(pb.pushforward.apply(pb.pullback.apply(pb.base->basis_element(d, i))).is_zero());
    }
  }
}

// Blowing up a point of P^3: A(Y~) = A(P^3) + A(pt) in degrees 1 and 2.
struct PointBlowup {
  RingPtr P3 = PresentedRing::make("P3", {{"h", 1}}, {Poly::monomial({4})}, 3);
  RingPtr pt = PresentedRing::make("pt", {}, {}, 0);
  BlowupModel model;
  PointBlowup()
      : model("Bl", P3, pt, RingMorphism::make("res", P3, pt, {pt->zero()}),
              LinearMap::from_declarations("inc", pt, P3, 3, {{pt->one(), P3->gen("h").pow(3)}}),
              {3, {pt->zero(), pt->zero(), pt->zero()}}, "E") {}
};

TEST(Blowup, PointInP3Hilbert) {
  PointBlowup b;
  EXPECT_EQ(b.model.hilbert_function(), (std::vector<std::size_t>{1, 2, 2, 1}));
  EXPECT_TRUE(b.model.check_product_rules().empty());
  EXPECT_TRUE(b.model.check_round_trip().empty());
}

TEST(Blowup, PointInP3Intersections) {
  PointBlowup b;
  const auto& m = b.model;
  const auto E = m.exceptional(b.pt->one());
  const auto h = m.pull(b.P3->gen("h"));
  // E is contracted; E^3 is the class of a point with sign (-1)^(n-1) = +1.
  EXPECT_TRUE(m.push(E).is_zero());
  EXPECT_EQ(m.push(m.multiply(E, m.multiply(E, E))), b.P3->gen("h").pow(3));
  EXPECT_TRUE(m.equal(m.multiply(h, E), m.zero()));
  for (int k = 0; k <= 3; ++k) {
    const Element y = b.P3->gen("h").pow(k);
    EXPECT_EQ(m.push(m.pull(y)), y);
  }
}

TEST(Blowup, EmittedPresentationAgreesWithModel) {
  PointBlowup b;
  const auto pres = emit_presentation(b.model, "BlRing");
  EXPECT_EQ(pres.ring->hilbert_function(), b.model.hilbert_function());
  for (const auto& r : pres.ring->relations()) {
    // Every harvested relation vanishes once the generators become model points.
    auto acc = b.model.zero();
    for (const auto& [e, c] : r.terms()) {
      auto term = b.model.pull(b.P3->one());
      for (std::size_t g = 0; g < e.size(); ++g) {
        for (int k = 0; k < e[g]; ++k) term = b.model.multiply(term, pres.generator_points[g]);
      }
      acc = b.model.add(acc, term, c);
    }
    EXPECT_TRUE(b.model.equal(acc, b.model.zero())) << format_poly(r, pres.ring->generators());
  }
}

TEST(Blowup, CorpusModelDecompositionRoundTrip) {
  const auto& env = testing::corpus_env("sec33-blowup");
  const BlowupModel& m = env.blowup("Pt");
  EXPECT_EQ(m.hilbert_function(), (std::vector<std::size_t>{1, 3, 6, 6, 3, 1}));
  EXPECT_TRUE(m.check_round_trip().empty());
  EXPECT_TRUE(m.check_product_rules().empty());
  std::size_t total = 0;
  for (int q = 0; q <= m.top_degree(); ++q) {
    for (std::size_t i = 0; i < m.dim(q); ++i) {
      const auto p = m.basis_point(q, i);
      EXPECT_EQ(m.coords(m.extract(m.raw(p)), q), m.coords(p, q));
      ++total;
    }
  }
  EXPECT_EQ(total, 20u);
}

TEST(Blowup, ExceptionalSelfIntersection) {
  const auto& env = testing::corpus_env("sec33-blowup");
  const BlowupModel& m = env.blowup("Pt");
  const RingPtr X = m.center();
  const RingPtr Y = m.ambient();
  const auto E = m.exceptional(X->one());
  // E^2 = j_*(5K + 4xi) + E T - i_*(1), with i_*(1) = 5H^2 + 3HT + T^2/2.
  auto rhs = m.exceptional(5 * X->gen("K") + 4 * X->gen("xi"));
  rhs = m.add(rhs, m.multiply(E, m.pull(Y->gen("T"))));
  rhs = m.add(rhs, m.pull(m.inclusion().apply(X->one())), -1);
  EXPECT_TRUE(m.equal(m.multiply(E, E), rhs)) << m.str(m.multiply(E, E));
}

TEST(FiberProduct, BaseChangeOfCurvePushforward) {
  const auto& env = testing::corpus_env("theorem-h-u");
  const LinearMap& push = env.pushforward("F_push");
  const RingMorphism& qa = env.pullback("F_qa");
  const RingMorphism& qb = env.pullback("F_qb");
  const RingPtr Pt = env.ring("Pt");
  const Element H = Pt->gen("H");
  const Element xi = qa.apply(env.ring("C2")->gen("xic"));
  const Element K = qa.apply(env.ring("C2")->gen("Kc"));
  EXPECT_EQ(push.apply(xi * qb.apply(H)), 3 * H);
  testing::Sampler s(8);
  for (int n = 0; n < 10; ++n) {
    const Element beta = s.element(Pt);
    EXPECT_EQ(push.apply(K * qb.apply(beta)), 2 * beta);
  }
}

}  // namespace
}  // namespace chowkit
