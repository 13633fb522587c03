// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chowkit/ring.hpp"

namespace chowkit {

// Degree-preserving ring homomorphism given by generator images. Every
// source relation is checked to vanish in the target at construction.
class RingMorphism {
 public:
  static RingMorphism make(std::string name, RingPtr source, RingPtr target,
                           std::vector<Element> images);
  static RingMorphism identity(const RingPtr& r);

  const std::string& name() const { return name_; }
  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::vector<Element>& images() const { return images_; }

  Element apply(const Element& x) const;
  Element apply(const Poly& p) const;

 private:
  std::string name_;
  RingPtr source_;
  RingPtr target_;
  std::vector<Element> images_;
  // Image of every source basis monomial, by degree.
  std::vector<std::vector<Element>> basis_images_;
};

// A declared value of a linear map: x maps to y.
struct Declaration {
  Element x;
  Element y;
};

// Graded Q-linear map with a fixed degree shift. The map is defined on the
// span of its declarations; evaluating outside that span throws
// UndeclaredPushforward instead of guessing zero.
class LinearMap {
 public:
  // `over` is a pullback from target to source. When given, every
  // declaration x => y is closed under the projection formula:
  // over(a)*x => a*y for every target basis monomial a.
  static LinearMap from_declarations(std::string name, RingPtr source, RingPtr target, int shift,
                                     std::vector<Declaration> decls,
                                     const RingMorphism* over = nullptr);

  // Defined by a value on every basis monomial; always total.
  static LinearMap from_basis_images(std::string name, RingPtr source, RingPtr target, int shift,
                                     const std::vector<std::vector<Element>>& images);

  static LinearMap zero(std::string name, RingPtr source, RingPtr target, int shift);

  const std::string& name() const { return name_; }
  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  int shift() const { return shift_; }

  Element apply(const Element& x) const;
  // Image of a source basis monomial, or nullopt when undeclared.
  std::optional<Element> try_basis(int d, std::size_t i) const;
  bool is_total() const;

  // The map in degree d as a (target dim) x (source dim) matrix; requires the
  // map to be total in that degree.
  Matrix matrix(int d) const;

  // Value on every declared source basis monomial, for re-declaring the map
  // over an enlarged ring.
  std::vector<Declaration> basis_declarations() const;

 private:
  struct Piece {
    std::size_t nx = 0;
    std::size_t ny = 0;
    bool trivially_zero = false;  // target degree out of range
    Echelon ech;                  // rref of [x coords | y coords]
  };
  std::optional<Element> eval(const Element& homogeneous, std::string* missing) const;

  std::string name_;
  RingPtr source_;
  RingPtr target_;
  int shift_ = 0;
  std::vector<Piece> pieces_;
};

struct Violation {
  std::string where;
  std::string detail;
};

// push(pull(a) * b) == a * push(b) for every basis a of pull.source() and b
// of push.source(). Undeclared values count as violations.
std::vector<Violation> check_projection_formula(const RingMorphism& pull, const LinearMap& push);

// (1/n) push(pull(a)) == a for every basis a of pull.source().
std::vector<Violation> verify_finite_cover(const RingMorphism& pull, const LinearMap& push,
                                           const Rational& n);

// Per-degree kernel and image dimensions of a map that is total.
std::vector<std::size_t> kernel_dims(const LinearMap& f);
std::vector<std::size_t> image_dims(const LinearMap& f);

// Per-degree rank, for deciding bijectivity of a ring morphism.
std::vector<std::size_t> morphism_ranks(const RingMorphism& f);

}  // namespace chowkit
