// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chowkit/morphism.hpp"
#include "chowkit/ring.hpp"

namespace chowkit {

// Chern classes c_1..c_rank of a vector bundle over some base ring.
struct BundleData {
  int rank = 0;
  std::vector<Element> chern;
};

struct ProjectiveBundle {
  RingPtr base;
  RingPtr total;
  BundleData bundle;
  std::string hyperplane;
  RingMorphism pullback;
  LinearMap pushforward;
};

// The hyperplane class z is the first generator of the total ring, followed
// by the base generators. The relation is sum_i (-1)^i c_i z^(rank-i) = 0.
ProjectiveBundle projective_bundle(const RingPtr& base, const BundleData& bundle,
                                   const std::string& hyperplane, const std::string& name);

// push(z^(rank-1+k)).
Element bundle_pushforward_values(const ProjectiveBundle& pb, int k);

// Blowup of Y along X with normal bundle N of rank d >= 2.
//
// A class on the blowup is stored as (y; x_0, ..., x_{d-2}) meaning
//   f^*y + sum_r j_*(z^r g^*x_r),
// where z is the tautological class on the exceptional divisor P(N), so
// z^d + c_1 z^(d-1) + ... + c_d = 0 there.
class BlowupModel {
 public:
  struct Point {
    Element y;
    std::vector<Element> x;
  };

  // A class f^*y + j_*(sum_k z^k g^*p_k) with no bound on k.
  struct Raw {
    Element y;
    std::vector<Element> p;
  };

  BlowupModel(std::string name, RingPtr ambient, RingPtr center, RingMorphism restrict,
              LinearMap include, BundleData normal, std::string exceptional);

  const std::string& name() const { return name_; }
  const RingPtr& ambient() const { return ambient_; }
  const RingPtr& center() const { return center_; }
  const RingMorphism& restriction() const { return restrict_; }
  const LinearMap& inclusion() const { return include_; }
  const BundleData& normal() const { return normal_; }
  const std::string& exceptional_name() const { return exceptional_; }
  int codim() const { return normal_.rank; }
  int top_degree() const { return ambient_->top_degree(); }

  Point zero() const;
  Point pull(const Element& y) const;
  // j_*(z^r g^*x) for any r >= 0.
  Point exceptional(const Element& x, int r = 0) const;
  Point add(const Point& a, const Point& b, const Rational& cb = 1) const;
  Point scale(const Point& a, const Rational& c) const;
  bool equal(const Point& a, const Point& b) const;
  Element push(const Point& a) const { return a.y; }

  // Product by the three rules, reduced with the key formula.
  Point multiply(const Point& a, const Point& b) const;
  // The same product in raw form, before any reduction.
  Raw multiply_raw(const Point& a, const Point& b) const;

  // Reduce z-powers with the bundle relation and the key formula.
  Point normalize(const Raw& r) const;
  // Read coordinates off with f_* and g_*(gamma * j^*), never using the key
  // formula. Agrees with normalize() when the model is consistent.
  Point extract(const Raw& r) const;
  Raw raw(const Point& a) const;

  // Basis of the degree-q piece: ambient basis, then each center slot.
  std::size_t dim(int q) const;
  std::vector<std::size_t> hilbert_function() const;
  Point basis_point(int q, std::size_t i) const;
  Vector coords(const Point& a, int q) const;
  Point from_coords(int q, const Vector& v) const;

  std::string str(const Point& a) const;

  // Route A vs route B on every pair of basis points; returns mismatches.
  std::vector<std::string> check_product_rules() const;
  // extract(raw(b)) == b on every basis point.
  std::vector<std::string> check_round_trip() const;

 private:
  Point trimmed(Point p) const;

  std::string name_;
  RingPtr ambient_;
  RingPtr center_;
  RingMorphism restrict_;
  LinearMap include_;
  BundleData normal_;
  std::string exceptional_;
  // s_m with g_*(z^(d-1+m)) = s_m.
  std::vector<Element> segre_;
};

// Presented ring of a blowup plus the maps needed to use it.
struct BlowupPresentation {
  RingPtr ring;
  RingMorphism pullback;  // ambient -> ring
  LinearMap pushforward;  // ring -> ambient
  // Model coordinates of each generator.
  std::vector<BlowupModel::Point> generator_points;

  Element to_element(const BlowupModel& m, const BlowupModel::Point& p) const;
  BlowupModel::Point to_point(const BlowupModel& m, const Element& e) const;

  std::vector<Matrix> inverse;   // per degree: model coords -> ring coords
  std::vector<Matrix> forward;   // per degree: ring coords -> model coords
};

// Generators: the ambient generators, the exceptional divisor, and j_*(g^*x)
// for each center generator x that is not the restriction of an ambient
// generator. `names` renames those by center generator name; the default is
// E_<name>. Relations are harvested degree by degree from the model.
BlowupPresentation emit_presentation(const BlowupModel& m, const std::string& ring_name,
                                     const std::map<std::string, std::string>& names = {});

enum class TransformCase { ExpectedDimension, ExcessOne };

BlowupModel::Point strict_transform(const BlowupModel& m, const Element& v,
                                    const std::optional<Element>& v_cap_x, TransformCase c);

struct FiberProduct {
  RingPtr ring;
  RingMorphism qa;
  RingMorphism qb;
};

// A x_S B. Generator names of A and B must be disjoint.
FiberProduct fiber_product_over_base(const std::string& name, const RingPtr& a, const RingPtr& b,
                                     const RingMorphism& pa, const RingMorphism& pb);

// Base change of push_a : A -> S along the second factor: F -> B with
// (alpha (x) beta) |-> pb(push_a(alpha)) * beta. Declared on every monomial
// of F, so a choice-dependent value surfaces as an inconsistency error.
LinearMap base_change_pushforward(const std::string& name, const FiberProduct& f,
                                  const RingMorphism& pb, const LinearMap& push_a);

}  // namespace chowkit
