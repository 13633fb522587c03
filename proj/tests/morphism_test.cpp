// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "chowkit/error.hpp"
#include "chowkit/morphism.hpp"
#include "support.hpp"

namespace chowkit {
namespace {

struct CurveOverJacobian {
  RingPtr J = PresentedRing::make("J", {{"T", 1}}, {Poly::monomial({3})}, 2);
  RingPtr CJ;
  CurveOverJacobian() {
    // K, xi, T with the universal-curve relations.
    auto g = [](int k, int x, int t) { return Poly::monomial({k, x, t}); };
    CJ = PresentedRing::make("CJ", {{"K", 1}, {"xi", 1}, {"T", 1}},
                             {g(0, 0, 3), g(2, 0, 0), g(0, 2, 0) + g(1, 0, 1), g(1, 1, 0),
                              g(0, 1, 2) - g(1, 0, 2) * Rational(3, 2)},
                             3);
  }
  RingMorphism pull() const { return RingMorphism::make("pull", J, CJ, {CJ->gen("T")}); }
  LinearMap push(const RingMorphism& p) const {
    return LinearMap::from_declarations("push", CJ, J, -1,
                                        {{CJ->one(), J->zero()},
                                         {CJ->gen("K"), J->scalar(2)},
                                         {CJ->gen("xi"), J->scalar(3)}},
                                        &p);
  }
};

TEST(Pushforward, FiberDegreesExtendThetaLinearly) {
  CurveOverJacobian c;
  const auto p = c.pull();
  const auto push = c.push(p);
  EXPECT_TRUE(push.is_total());
  const Element K = c.CJ->gen("K");
  const Element xi = c.CJ->gen("xi");
  const Element T = c.CJ->gen("T");
  // xi^2 = -K T and the fiber degree of K is 2.
  EXPECT_EQ(push.apply(xi * xi), -2 * c.J->gen("T"));
  EXPECT_TRUE(push.apply(K * xi).is_zero());
  EXPECT_EQ(push.apply(K * T), 2 * c.J->gen("T"));
  EXPECT_EQ(push.apply(xi * T * T), 3 * c.J->gen("T").pow(2));
  EXPECT_TRUE(check_projection_formula(p, push).empty());
}

TEST(Pushforward, UndeclaredValueFailsAtUse) {
  CurveOverJacobian c;
  const auto push = LinearMap::from_declarations("partial", c.CJ, c.J, -1,
                                                 {{c.CJ->gen("K"), c.J->scalar(2)}});
  EXPECT_FALSE(push.is_total());
  EXPECT_EQ(push.apply(c.CJ->gen("K")), c.J->scalar(2));
  EXPECT_THROW(push.apply(c.CJ->gen("xi")), UndeclaredPushforward);
}

TEST(Pushforward, DegreeMismatchRejected) {
  CurveOverJacobian c;
  EXPECT_THROW(LinearMap::from_declarations("bad", c.CJ, c.J, -1, {{c.CJ->gen("K"), c.J->gen("T")}}),
               DomainError);
}

TEST(Pushforward, InconsistentDeclarationsRejected) {
  CurveOverJacobian c;
  const Element K = c.CJ->gen("K");
  EXPECT_THROW(LinearMap::from_declarations("bad", c.CJ, c.J, -1,
                                            {{K, c.J->scalar(2)}, {2 * K, c.J->scalar(3)}}),
               DomainError);
}

TEST(Pullback, RelationViolationNamesRelation) {
  CurveOverJacobian c;
  // T maps to something whose cube survives.
  const auto bad = PresentedRing::make("P", {{"h", 1}}, {Poly::monomial({4})}, 3);
  try {
    RingMorphism::make("bad", c.J, bad, {bad->gen("h")});
    FAIL() << "T^3 = 0 should not survive";
  } catch (const RelationViolation& e) {
    EXPECT_NE(std::string(e.what()).find("T^3"), std::string::npos) << e.what();
  }
}

TEST(Pullback, WrongImageOfHUBreaksTheoremBRelations) {
  const auto& env = testing::corpus_env("theorem-B-ring");
  const RingMorphism& phi = env.pullback("Phi");
  auto images = phi.images();
  // HU alone pulled back from the ambient, with no exceptional correction.
  images[0] = env.evaluate("Pt", "H");
  EXPECT_THROW(RingMorphism::make("wrong", phi.source(), phi.target(), images), RelationViolation);
}

TEST(ProjectionFormula, PerturbedTableIsCaught) {
  const auto& env = testing::corpus_env("theorem-B-ring");
  const RingMorphism& phi = env.pullback("Phi");
  const LinearMap& push = env.pushforward("Phipush");
  EXPECT_TRUE(check_projection_formula(phi, push).empty());
  auto decls = push.basis_declarations();
  ASSERT_FALSE(decls.empty());
  // Perturb the image of H by +TU.
  bool perturbed = false;
  for (auto& d : decls) {
    if (d.x == env.evaluate("Pt", "H")) {
      d.y += env.evaluate("U", "TU");
      perturbed = true;
    }
  }
  ASSERT_TRUE(perturbed);
  const auto bad = LinearMap::from_declarations("bad", push.source(), push.target(), 0, decls);
  EXPECT_FALSE(check_projection_formula(phi, bad).empty());
}

TEST(FiniteCover, BlowdownIsDegreeOne) {
  const auto& env = testing::corpus_env("theorem-B-ring");
  const RingMorphism& phi = env.pullback("Phi");
  const LinearMap& push = env.pushforward("Phipush");
  EXPECT_TRUE(verify_finite_cover(phi, push, 1).empty());
  EXPECT_FALSE(verify_finite_cover(phi, push, 2).empty());
}

TEST(FiniteCover, MultiplicationByTwoOnAbelianSurface) {
  const auto& env = testing::corpus_env("theorem-C-jacobian");
  EXPECT_TRUE(verify_finite_cover(env.pullback("times2"), env.pushforward("times2_push"), 16).empty());
  EXPECT_FALSE(verify_finite_cover(env.pullback("times2"), env.pushforward("times2_push"), 1).empty());
}

TEST(KernelDims, BlowdownPushforward) {
  const auto& env = testing::corpus_env("excision-ledger");
  EXPECT_EQ(kernel_dims(env.pushforward("Phipush")), (std::vector<std::size_t>{0, 1, 2, 2, 1, 0}));
  EXPECT_EQ(image_dims(env.pushforward("Phipush")), (std::vector<std::size_t>{1, 2, 4, 4, 2, 1}));
}

TEST(Pullback, IdentityAndRanks) {
  CurveOverJacobian c;
  const auto id = RingMorphism::identity(c.CJ);
  testing::Sampler s(5);
  for (int n = 0; n < 10; ++n) {
    const Element x = s.element(c.CJ);
    EXPECT_EQ(id.apply(x), x);
  }
  EXPECT_EQ(morphism_ranks(c.pull()), (std::vector<std::size_t>{1, 1, 1}));
}

}  // namespace
}  // namespace chowkit
