// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "chowkit/matrix.hpp"
#include "chowkit/rational.hpp"

namespace chowkit {

struct Generator {
  std::string name;
  int degree = 1;
};

using Exponents = std::vector<int>;

// Lexicographically larger exponent vectors sort first, so with generators
// (H, T) the degree-3 monomials come out as H^3, H^2*T, H*T^2, T^3. Within a
// fixed degree this is graded-lex order, largest first.
struct ExponentsOrder {
  bool operator()(const Exponents& a, const Exponents& b) const { return a > b; }
};

// A polynomial over a generator list with no reduction applied. Used for
// relations, expression evaluation before a ring exists, and substitution.
class Poly {
 public:
  using Terms = std::map<Exponents, Rational, ExponentsOrder>;

  Poly() = default;
  explicit Poly(std::size_t ngens) : ngens_(ngens) {}

  static Poly constant(std::size_t ngens, const Rational& c);
  static Poly generator(std::size_t ngens, std::size_t index);
  static Poly monomial(const Exponents& e, const Rational& c = 1);

  std::size_t ngens() const { return ngens_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator-(Poly a) { return a *= -1; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  std::size_t ngens_ = 0;
  Terms terms_;
};

int monomial_degree(const Exponents& e, const std::vector<Generator>& gens);

// Degrees of the terms of p; a homogeneous nonzero p yields one value.
std::vector<int> term_degrees(const Poly& p, const std::vector<Generator>& gens);

std::string format_monomial(const Exponents& e, const std::vector<Generator>& gens);

// Terms in the order of their keys; the caller decides that order.
std::string format_terms(const std::vector<std::pair<std::string, Rational>>& terms);

std::string format_poly(const Poly& p, const std::vector<Generator>& gens);

class PresentedRing;
using RingPtr = std::shared_ptr<const PresentedRing>;

// Position of a basis monomial: graded piece and index within it.
struct BasisKey {
  int degree = 0;
  std::size_t index = 0;
  friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
};

// Normal-form element of a presented ring. Only basis monomials appear and
// every stored coefficient is nonzero.
class Element {
 public:
  using Terms = std::map<BasisKey, Rational>;

  Element() = default;
  explicit Element(RingPtr ring) : ring_(std::move(ring)) {}
  Element(RingPtr ring, Terms terms);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Homogeneous degree, or -1 for zero. Throws DomainError on mixed degree.
  int degree() const;
  bool is_homogeneous() const;
  Element part(int d) const;
  // Coefficient of the unit, for degree-0 parts.
  Rational constant() const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Rational& c) { return a *= c; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend Element operator-(Element a) { return a *= -1; }
  friend Element operator*(const Element& a, const Element& b);
  Element pow(int n) const;

  // Same ring and same terms.
  friend bool operator==(const Element& a, const Element& b);

  std::string str() const;

 private:
  void add_scaled(const Element& o, const Rational& c);
  RingPtr ring_;
  Terms terms_;
};

// Q[generators]/(relations), truncated above top_degree. All graded pieces
// and the normal-form table of every monomial are built eagerly; after
// construction the ring is immutable.
class PresentedRing : public std::enable_shared_from_this<PresentedRing> {
 public:
  static RingPtr make(std::string name, std::vector<Generator> gens, std::vector<Poly> relations,
                      int top_degree);

  const std::string& name() const { return name_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<Poly>& relations() const { return relations_; }
  int top_degree() const { return top_; }
  std::size_t ngens() const { return gens_.size(); }

  // Index of a generator, or throws DomainError.
  std::size_t generator_index(const std::string& name) const;
  bool has_generator(const std::string& name) const;

  // Monomials of degree d in list order (see ExponentsOrder).
  const std::vector<Exponents>& monomials(int d) const;
  const std::vector<Exponents>& basis(int d) const;
  std::size_t dim(int d) const;
  std::vector<std::size_t> hilbert_function() const;
  std::size_t total_dim() const;

  Element zero() const;
  Element one() const;
  Element gen(const std::string& name) const;
  Element gen(std::size_t index) const;
  Element scalar(const Rational& c) const;
  Element basis_element(int d, std::size_t i) const;
  Element monomial(const Exponents& e) const;
  Element reduce(const Poly& p) const;

  // Coordinates of the degree-d part of x in basis(d).
  Vector coords(const Element& x, int d) const;
  Element from_coords(int d, const Vector& v) const;

  std::string format_basis_monomial(int d, std::size_t i) const;

  // Substitute generator images into p. Images are in a ring `target`.
  static Element substitute(const Poly& p, const std::vector<Element>& images,
                            const RingPtr& target);

 private:
  struct Piece {
    std::vector<Exponents> monomials;
    std::vector<Exponents> basis;
    // Normal form of every monomial, in basis coordinates.
    std::vector<Vector> normal;
  };

  PresentedRing() = default;
  void build();
  const Vector* lookup(const Exponents& e, int* degree) const;

  std::string name_;
  std::vector<Generator> gens_;
  std::vector<Poly> relations_;
  int top_ = 0;
  std::vector<Piece> pieces_;
  // monomial -> position in pieces_[deg].monomials
  std::vector<std::map<Exponents, std::size_t>> index_;

  friend class Element;
  friend Element operator*(const Element& a, const Element& b);
};

// Enumerate the exponent vectors of total degree d, in list order.
std::vector<Exponents> enumerate_monomials(const std::vector<Generator>& gens, int d);

// Q[gens]/(rels + extra), same top degree. Errors on inhomogeneous extras.
RingPtr quotient_by_classes(const RingPtr& r, const std::vector<Element>& classes,
                            std::string name);

// r with a new generator and relations expressed over the enlarged generator
// list. Old relations are kept.
RingPtr adjoin_class(const RingPtr& r, std::string name, const Generator& g,
                     const std::vector<Poly>& relations);

// Express a normal-form element as a polynomial over its ring's generators.
Poly to_poly(const Element& x);

// Rename a polynomial from one generator list into another by generator name.
Poly transport_poly(const Poly& p, const std::vector<Generator>& from,
                    const std::vector<Generator>& to);

}  // namespace chowkit
