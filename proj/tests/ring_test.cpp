// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "chowkit/error.hpp"
#include "chowkit/ring.hpp"
#include "oracle.hpp"
#include "support.hpp"

namespace chowkit {
namespace {

namespace oracle = testing::oracle;

Poly poly(const oracle::Pol& p) {
  Poly out(p.begin()->first.size());
  for (const auto& [e, c] : p) out.add_term(e, c);
  return out;
}

RingPtr p_xi_ring() {
  return PresentedRing::make(
      "Pxi", {{"T", 1}, {"H", 1}},
      {poly({{{3, 0}, 1}}), poly({{{0, 4}, 1}, {{1, 3}, 1}, {{2, 2}, Rational(1, 2)}})}, 6);
}

TEST(Hilbert, ProjectiveBundleMatchesOracle) {
  const auto r = p_xi_ring();
  const std::vector<oracle::Pol> rels = {{{{3, 0}, 1}}, {{{0, 4}, 1}, {{1, 3}, 1}, {{2, 2}, Rational(1, 2)}}};
  const auto expected = oracle::hilbert({1, 1}, rels, 6);
  EXPECT_EQ(expected, (std::vector<std::size_t>{1, 2, 3, 3, 2, 1, 0}));
  EXPECT_EQ(r->hilbert_function(), expected);
}

TEST(Hilbert, MonomialCountForTruncatedPolynomialRing) {
  // A^i B^j with i <= 3, j <= 2, counted directly.
  std::vector<std::size_t> count(6, 0);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 2; ++j) ++count[i + j];
  }
  const auto r = PresentedRing::make("AB", {{"A", 1}, {"B", 1}},
                                     {Poly::monomial({4, 0}), Poly::monomial({0, 3})}, 5);
  EXPECT_EQ(r->hilbert_function(), count);
}

TEST(Hilbert, DiagonalRingOracle) {
  const std::vector<oracle::Pol> rels = {
      {{{2, 0, 0}, 1}},
      {{{0, 2, 0}, 1}},
      {{{1, 0, 1}, 2}, {{1, 1, 0}, -1}},
      {{{1, 0, 1}, 1}, {{0, 1, 1}, -1}},
      {{{0, 0, 2}, 2}, {{1, 1, 0}, 1}},
  };
  std::vector<Poly> polys;
  for (const auto& p : rels) polys.push_back(poly(p));
  const auto r = PresentedRing::make("CxC", {{"p1", 1}, {"p2", 1}, {"D", 1}}, polys, 2);
  EXPECT_EQ(r->hilbert_function(), oracle::hilbert({1, 1, 1}, rels, 2));
  EXPECT_EQ(r->hilbert_function(), (std::vector<std::size_t>{1, 3, 1}));
  // The canonical basis monomial is D^2; p1 p2 spans the same line.
  const Element p1p2 = r->gen("p1") * r->gen("p2");
  EXPECT_FALSE(p1p2.is_zero());
  EXPECT_EQ(r->gen("D").pow(2), Rational(-1, 2) * p1p2);
}

TEST(Hilbert, WeightedGeneratorsOracle) {
  // Mixed degrees exercise the weighted enumeration path.
  const std::vector<oracle::Pol> rels = {{{{3, 0}, 1}, {{1, 1}, -2}}, {{{0, 2}, 1}}};
  std::vector<Poly> polys;
  for (const auto& p : rels) polys.push_back(poly(p));
  const auto r = PresentedRing::make("W", {{"a", 1}, {"b", 2}}, polys, 6);
  EXPECT_EQ(r->hilbert_function(), oracle::hilbert({1, 2}, rels, 6));
}

TEST(Hilbert, DimEqualsMonomialsMinusRelationRank) {
  const auto r = p_xi_ring();
  for (int d = 0; d <= r->top_degree(); ++d) {
    EXPECT_EQ(r->dim(d), r->basis(d).size());
    EXPECT_LE(r->dim(d), r->monomials(d).size());
  }
  EXPECT_EQ(r->total_dim(), 12u);
}

TEST(NormalForm, TopDegreeVanishingByHand) {
  const auto r = p_xi_ring();
  const Element T = r->gen("T");
  const Element H = r->gen("H");
  EXPECT_TRUE((H.pow(4) * T.pow(2)).is_zero());
  EXPECT_EQ(H.pow(4), -(H.pow(3) * T) - Rational(1, 2) * H.pow(2) * T.pow(2));
  EXPECT_FALSE(H.pow(3).is_zero());
}

TEST(NormalForm, AboveTopDegreeIsZero) {
  const auto r = p_xi_ring();
  EXPECT_TRUE(r->gen("H").pow(7).is_zero());
}

TEST(RingErrors, InhomogeneousRelationNamesIt) {
  try {
    PresentedRing::make("Bad", {{"x", 1}, {"y", 2}}, {poly({{{2, 0}, 1}, {{0, 2}, 1}})}, 4);
    FAIL() << "inhomogeneous relation accepted";
  } catch (const ConstructionError& e) {
    EXPECT_NE(std::string(e.what()).find("inhomogeneous relation x^2 + y^2"), std::string::npos)
        << e.what();
  }
}

TEST(RingErrors, DuplicateAndUnknownGenerators) {
  EXPECT_THROW(PresentedRing::make("D", {{"x", 1}, {"x", 1}}, {}, 2), ConstructionError);
  const auto r = p_xi_ring();
  EXPECT_THROW(r->gen("Q"), DomainError);
}

TEST(RingErrors, MixedRingOperands) {
  const auto a = p_xi_ring();
  const auto b = p_xi_ring();
  EXPECT_THROW(a->gen("T") + b->gen("T"), DomainError);
  EXPECT_THROW(a->gen("T") * b->gen("T"), DomainError);
}

TEST(Quotient, ByClassMatchesHandPresentation) {
  const auto r = PresentedRing::make("AB", {{"A", 1}, {"B", 1}},
                                     {Poly::monomial({4, 0}), Poly::monomial({0, 3})}, 5);
  const auto q = quotient_by_classes(r, {4 * r->gen("A")}, "Q");
  EXPECT_EQ(q->hilbert_function(), (std::vector<std::size_t>{1, 1, 1, 0, 0, 0}));
  EXPECT_THROW(quotient_by_classes(r, {r->gen("A") + r->gen("A").pow(2)}, "Bad"), ConstructionError);
}

TEST(Adjoin, FreeClassAddsFreeSummand) {
  const auto r = PresentedRing::make("J", {{"T", 1}}, {Poly::monomial({3})}, 3);
  const auto s = adjoin_class(r, "JA", {"A", 2}, {Poly::monomial({0, 2}), Poly::monomial({1, 1})});
  EXPECT_EQ(s->hilbert_function(), (std::vector<std::size_t>{1, 1, 2, 0}));
}

TEST(Element, CoordinatesRoundTrip) {
  const auto r = p_xi_ring();
  testing::Sampler s(3);
  for (int n = 0; n < 20; ++n) {
    const int d = s.uniform(0, r->top_degree());
    const Element x = s.homogeneous(r, d);
    EXPECT_EQ(r->from_coords(d, r->coords(x, d)), x);
  }
}

TEST(Element, PartAndDegree) {
  const auto r = p_xi_ring();
  const Element x = r->one() + 3 * r->gen("H") + r->gen("H") * r->gen("T");
  EXPECT_EQ(x.part(1), 3 * r->gen("H"));
  EXPECT_EQ(x.part(2).degree(), 2);
  EXPECT_FALSE(x.is_homogeneous());
  EXPECT_EQ(x.constant(), 1);
}

TEST(Format, MonomialsAndTerms) {
  const auto r = p_xi_ring();
  // Factors follow the declared generator order (T, H).
  EXPECT_EQ((r->gen("H").pow(3) * r->gen("T")).str(), "T*H^3");
  EXPECT_EQ(r->zero().str(), "0");
}

}  // namespace
}  // namespace chowkit
