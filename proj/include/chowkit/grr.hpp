// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chowkit/morphism.hpp"
#include "chowkit/ring.hpp"

namespace chowkit {

// A class split into graded parts; parts[d] has degree d.
struct CharClass {
  RingPtr ring;
  std::vector<Element> parts;

  Element total() const;
  Element part(int d) const;
};

// Keeps parts 0..cutoff of a*b.
CharClass multiply(const CharClass& a, const CharClass& b, int cutoff);
CharClass add(const CharClass& a, const CharClass& b);

// chern[i-1] = c_i; missing classes are zero.
CharClass chern_to_character(const RingPtr& r, const Rational& rank, const std::vector<Element>& chern,
                             int cutoff);

struct ChernData {
  Rational rank;
  std::vector<Element> chern;  // c_1..c_cutoff
};

// Inverse of chern_to_character; the rank is the constant part of ch.
ChernData character_to_chern(const CharClass& ch, int cutoff);

// exp(L) up to cutoff.
CharClass exponential(const Element& line, int cutoff);

// Todd class of the dual of the line bundle with first Chern class K.
CharClass todd_inverse_canonical(const Element& K, int cutoff);

// A family of curves: pushforward of shift -1 with a relative canonical class
// and optionally the Chern classes of a rank-`bundle_rank` bundle on the total
// space.
struct Fibration {
  std::string name;
  RingPtr total;
  RingPtr base;
  RingMorphism pullback;
  LinearMap pushforward;
  Element K;
  std::optional<Element> c1;
  std::optional<Element> c2;
  int bundle_rank = 2;
};

Fibration make_fibration(std::string name, RingMorphism pullback, LinearMap pushforward, Element K,
                         std::optional<Element> c1 = std::nullopt,
                         std::optional<Element> c2 = std::nullopt);

// ch(pi_! F) = pi_*(ch(F) Td(K^dual)), part by part.
CharClass grr_push(const Fibration& f, const CharClass& ch);

// pi_*(K^(a+1) c1^b c2^c).
Element kappa(const Fibration& f, int a, int b, int c);

// First Chern class of pi_!(K^m (x) det^n (x) E^l), l in {0, 1}.
Element lambda_class(const Fibration& f, int m, int n, int l);

// ch of the bundle on the total space carried by f.
CharClass bundle_character(const Fibration& f, int cutoff);

// Name of the generator standing for kappa_{a,b,c}: k_m1_2_0 for (-1,2,0).
std::string kappa_symbol(int a, int b, int c);

struct TautRing {
  RingPtr base;
  Fibration fibration;
};

// Free ring on the kappa symbols of degree 1..cutoff with a universal curve
// over it. The degree-0 symbols are numbers: kappa_{0,0,0} = 2g-2 and
// kappa_{-1,1,0} = degree. With k_squared_vanishes the relation K^2 = 0 is
// imposed upstairs and the kappa_{a>=1,...} symbols are omitted.
TautRing formal_taut_ring(const std::string& name, int cutoff, int genus, int degree,
                          bool k_squared_vanishes);

}  // namespace chowkit
