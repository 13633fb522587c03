// SPDX-License-Identifier: Apache-2.0
#include <utility>

#include "chowkit/constructions.hpp"
#include "chowkit/error.hpp"

namespace chowkit {

namespace {

// p over base generators, re-indexed into (z, base...) with z^k attached.
Poly lift(const Poly& p, std::size_t nbase, int k) {
  Poly out(nbase + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponents f(nbase + 1, 0);
    f[0] = k;
    for (std::size_t i = 0; i < nbase; ++i) f[i + 1] = e[i];
    out.add_term(f, c);
  }
  return out;
}

}  // namespace

ProjectiveBundle projective_bundle(const RingPtr& base, const BundleData& bundle,
                                   const std::string& hyperplane, const std::string& name) {
  const int r = bundle.rank;
  if (r < 1) throw ConstructionError("projective bundle " + name + ": rank must be positive");
  if (static_cast<int>(bundle.chern.size()) != r) {
    throw ConstructionError("projective bundle " + name + ": expected " + std::to_string(r) +
                            " chern classes, got " + std::to_string(bundle.chern.size()));
  }
  if (base->has_generator(hyperplane)) {
    throw ConstructionError("projective bundle " + name + ": hyperplane " + hyperplane +
                            " clashes with a generator of " + base->name());
  }
  for (int i = 1; i <= r; ++i) {
    const Element& c = bundle.chern[static_cast<std::size_t>(i - 1)];
    if (c.is_zero()) continue;
    if (c.ring() != base) throw DomainError("projective bundle " + name + ": c" + std::to_string(i) + " is not over " + base->name());
    if (!c.is_homogeneous() || c.degree() != i) {
      throw ConstructionError("projective bundle " + name + ": c" + std::to_string(i) + " = " +
                              c.str() + " is not of degree " + std::to_string(i));
    }
  }

  const std::size_t nb = base->ngens();
  std::vector<Generator> gens{{hyperplane, 1}};
  for (const auto& g : base->generators()) gens.push_back(g);
  std::vector<Poly> rels;
  for (const auto& p : base->relations()) rels.push_back(lift(p, nb, 0));
  Poly grothendieck = lift(Poly::constant(nb, 1), nb, r);
  for (int i = 1; i <= r; ++i) {
    const Poly ci = to_poly(bundle.chern[static_cast<std::size_t>(i - 1)]);
    if (ci.is_zero()) continue;
    grothendieck += lift(ci, nb, r - i) * Rational(i % 2 == 0 ? 1 : -1);
  }
  rels.push_back(std::move(grothendieck));
  RingPtr total = PresentedRing::make(name, std::move(gens), std::move(rels), base->top_degree() + r - 1);

  std::vector<Element> images;
  for (std::size_t i = 0; i < nb; ++i) images.push_back(total->gen(i + 1));
  RingMorphism pull = RingMorphism::make(name + "_pull", base, total, std::move(images));

  // The total ring is free over the base on 1, z, ..., z^(r-1); the
  // pushforward picks out the z^(r-1) coefficient.
  std::vector<Declaration> decls;
  const Element z = total->gen(std::size_t{0});
  for (int d = 0; d <= base->top_degree(); ++d) {
    for (std::size_t b = 0; b < base->dim(d); ++b) {
      const Element beta = base->basis_element(d, b);
      const Element pb = pull.apply(beta);
      for (int i = 0; i < r; ++i) {
        decls.push_back({z.pow(i) * pb, i == r - 1 ? beta : base->zero()});
      }
    }
  }
  LinearMap push = LinearMap::from_declarations(name + "_push", total, base, -(r - 1), std::move(decls));
  return ProjectiveBundle{base, total, bundle, hyperplane, std::move(pull), std::move(push)};
}

Element bundle_pushforward_values(const ProjectiveBundle& pb, int k) {
  if (k < 0) throw DomainError("bundle pushforward index must be non-negative");
  const Element z = pb.total->gen(pb.hyperplane);
  return pb.pushforward.apply(z.pow(pb.bundle.rank - 1 + k));
}

// ---------------------------------------------------------------- fiber product

FiberProduct fiber_product_over_base(const std::string& name, const RingPtr& a, const RingPtr& b,
                                     const RingMorphism& pa, const RingMorphism& pb) {
  if (pa.source() != pb.source()) {
    throw ConstructionError("fiber product " + name + ": " + pa.name() + " and " + pb.name() +
                            " start from different base rings");
  }
  if (pa.target() != a || pb.target() != b) {
    throw ConstructionError("fiber product " + name + ": base morphisms do not land in the factors");
  }
  const RingPtr& s = pa.source();
  std::vector<Generator> gens = a->generators();
  for (const auto& g : b->generators()) {
    if (a->has_generator(g.name)) {
      throw ConstructionError("fiber product " + name + ": generator " + g.name + " appears in both " +
                              a->name() + " and " + b->name());
    }
    gens.push_back(g);
  }
  std::vector<Poly> rels;
  for (const auto& p : a->relations()) rels.push_back(transport_poly(p, a->generators(), gens));
  for (const auto& p : b->relations()) rels.push_back(transport_poly(p, b->generators(), gens));
  for (std::size_t i = 0; i < s->ngens(); ++i) {
    const Poly lhs = transport_poly(to_poly(pa.images()[i]), a->generators(), gens);
    const Poly rhs = transport_poly(to_poly(pb.images()[i]), b->generators(), gens);
    rels.push_back(lhs - rhs);
  }
  const int ts = s->top_degree();
  const int top = (a->top_degree() - ts) + (b->top_degree() - ts) + ts;
  RingPtr f = PresentedRing::make(name, gens, std::move(rels), top);

  auto embed = [&](const RingPtr& from) {
    std::vector<Element> images;
    for (const auto& g : from->generators()) images.push_back(f->gen(g.name));
    return images;
  };
  RingMorphism qa = RingMorphism::make(name + "_qa", a, f, embed(a));
  RingMorphism qb = RingMorphism::make(name + "_qb", b, f, embed(b));
  return FiberProduct{f, std::move(qa), std::move(qb)};
}

LinearMap base_change_pushforward(const std::string& name, const FiberProduct& f,
                                  const RingMorphism& pb, const LinearMap& push_a) {
  const RingPtr& a = f.qa.source();
  const RingPtr& b = f.qb.source();
  if (push_a.source() != a || push_a.target() != pb.source() || pb.target() != b) {
    throw ConstructionError("base change " + name + ": maps do not fit the fiber square");
  }
  const std::size_t na = a->ngens();
  std::vector<Declaration> decls;
  for (int q = 0; q <= f.ring->top_degree(); ++q) {
    for (const auto& e : f.ring->monomials(q)) {
      const Exponents ea(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(na));
      const Exponents eb(e.begin() + static_cast<std::ptrdiff_t>(na), e.end());
      if (monomial_degree(ea, a->generators()) > a->top_degree()) continue;
      if (monomial_degree(eb, b->generators()) > b->top_degree()) continue;
      const Element x = f.ring->monomial(e);
      if (x.is_zero()) continue;
      try {
        const Element down = push_a.apply(a->monomial(ea));
        decls.push_back({x, pb.apply(down) * b->monomial(eb)});
      } catch (const UndeclaredPushforward&) {
        // Leave this monomial to the other declarations; if nothing covers
        // it the map reports it when used.
      }
    }
  }
  return LinearMap::from_declarations(name, f.ring, b, push_a.shift(), std::move(decls));
}

}  // namespace chowkit
