// SPDX-License-Identifier: Apache-2.0
#include <functional>
#include <set>
#include <utility>

#include "chowkit/constructions.hpp"
#include "chowkit/error.hpp"

namespace chowkit {

using Point = BlowupModel::Point;
using Raw = BlowupModel::Raw;

BlowupModel::BlowupModel(std::string name, RingPtr ambient, RingPtr center, RingMorphism restrict,
                         LinearMap include, BundleData normal, std::string exceptional)
    : name_(std::move(name)),
      ambient_(std::move(ambient)),
      center_(std::move(center)),
      restrict_(std::move(restrict)),
      include_(std::move(include)),
      normal_(std::move(normal)),
      exceptional_(std::move(exceptional)) {
  const std::string who = "blowup " + name_;
  const int d = normal_.rank;
  if (d < 2) throw ConstructionError(who + ": codimension must be at least 2");
  if (static_cast<int>(normal_.chern.size()) != d) {
    throw ConstructionError(who + ": normal bundle of rank " + std::to_string(d) + " needs " +
                            std::to_string(d) + " chern classes");
  }
  if (restrict_.source() != ambient_ || restrict_.target() != center_) {
    throw ConstructionError(who + ": pullback " + restrict_.name() + " must run from " +
                            ambient_->name() + " to " + center_->name());
  }
  if (include_.source() != center_ || include_.target() != ambient_) {
    throw ConstructionError(who + ": pushforward " + include_.name() + " must run from " +
                            center_->name() + " to " + ambient_->name());
  }
  if (include_.shift() != d) {
    throw ConstructionError(who + ": pushforward shift " + std::to_string(include_.shift()) +
                            " does not match the normal bundle rank " + std::to_string(d));
  }
  for (int i = 1; i <= d; ++i) {
    Element& c = normal_.chern[static_cast<std::size_t>(i - 1)];
    if (c.is_zero()) {
      c = center_->zero();
      continue;
    }
    if (c.ring() != center_ || !c.is_homogeneous() || c.degree() != i) {
      throw ConstructionError(who + ": normal chern class c" + std::to_string(i) + " = " + c.str() +
                              " is not a degree-" + std::to_string(i) + " class on " + center_->name());
    }
  }
  // g_*(z^(d-1+m)) = s_m with s_0 = 1, s_m = -sum_i c_i s_(m-i).
  segre_.push_back(center_->one());
  for (int m = 1; m <= center_->top_degree(); ++m) {
    Element s = center_->zero();
    for (int i = 1; i <= std::min(m, d); ++i) s -= normal_.chern[static_cast<std::size_t>(i - 1)] * segre_[static_cast<std::size_t>(m - i)];
    segre_.push_back(s);
  }
}

Point BlowupModel::zero() const {
  return Point{ambient_->zero(), std::vector<Element>(static_cast<std::size_t>(codim() - 1), center_->zero())};
}

Point BlowupModel::pull(const Element& y) const {
  Point p = zero();
  p.y = y.is_zero() ? ambient_->zero() : y;
  if (p.y.ring() != ambient_) throw DomainError("blowup " + name_ + ": " + y.str() + " is not on " + ambient_->name());
  return p;
}

Point BlowupModel::exceptional(const Element& x, int r) const {
  if (r < 0) throw DomainError("negative exceptional twist");
  Raw raw{ambient_->zero(), std::vector<Element>(static_cast<std::size_t>(r) + 1, center_->zero())};
  if (!x.is_zero() && x.ring() != center_) {
    throw DomainError("blowup " + name_ + ": " + x.str() + " is not on " + center_->name());
  }
  raw.p[static_cast<std::size_t>(r)] = x.is_zero() ? center_->zero() : x;
  return normalize(raw);
}

Point BlowupModel::add(const Point& a, const Point& b, const Rational& cb) const {
  Point out = a;
  out.y += b.y * cb;
  for (std::size_t r = 0; r < out.x.size(); ++r) out.x[r] += b.x[r] * cb;
  return trimmed(std::move(out));
}

Point BlowupModel::scale(const Point& a, const Rational& c) const {
  Point out = a;
  out.y *= c;
  for (auto& x : out.x) x *= c;
  return trimmed(std::move(out));
}

Point BlowupModel::trimmed(Point p) const {
  if (!p.y.ring()) p.y = ambient_->zero();
  for (auto& x : p.x)
    if (!x.ring()) x = center_->zero();
  return p;
}

bool BlowupModel::equal(const Point& a, const Point& b) const {
  if (!(a.y == b.y)) return false;
  for (std::size_t r = 0; r < a.x.size(); ++r)
    if (!(a.x[r] == b.x[r])) return false;
  return true;
}

Raw BlowupModel::multiply_raw(const Point& a, const Point& b) const {
  const std::size_t slots = a.x.size();
  Raw out{a.y * b.y, std::vector<Element>(2 * slots + 1, center_->zero())};
  const Element ra = restrict_.apply(a.y);
  const Element rb = restrict_.apply(b.y);
  for (std::size_t r = 0; r < slots; ++r) {
    // f^*a . j_*(z^r x) = j_*(z^r g^*(i^*a) x)
    out.p[r] += ra * b.x[r] + rb * a.x[r];
    // j_*u . j_*v = -j_*(z u v)
    for (std::size_t s = 0; s < slots; ++s) out.p[r + s + 1] -= a.x[r] * b.x[s];
  }
  return out;
}

Point BlowupModel::multiply(const Point& a, const Point& b) const { return normalize(multiply_raw(a, b)); }

Raw BlowupModel::raw(const Point& a) const { return Raw{a.y, a.x}; }

Point BlowupModel::normalize(const Raw& r) const {
  const int d = codim();
  std::vector<Element> p = r.p;
  if (static_cast<int>(p.size()) < d) p.resize(static_cast<std::size_t>(d), center_->zero());
  for (auto& e : p)
    if (!e.ring()) e = center_->zero();
  const auto& c = normal_.chern;
  // z^k for k >= d: z^d = -sum_i c_i z^(d-i).
  for (int k = static_cast<int>(p.size()) - 1; k >= d; --k) {
    const Element w = p[static_cast<std::size_t>(k)];
    if (w.is_zero()) continue;
    for (int i = 1; i <= d; ++i) p[static_cast<std::size_t>(k - i)] -= c[static_cast<std::size_t>(i - 1)] * w;
    p[static_cast<std::size_t>(k)] = center_->zero();
  }
  // Key formula: j_*(z^(d-1) g^*w) = f^*(i_*w) - sum_{i>=1} j_*(z^(d-1-i) g^*(c_i w)).
  Point out = zero();
  out.y = r.y.ring() ? r.y : ambient_->zero();
  const Element w = p[static_cast<std::size_t>(d - 1)];
  if (!w.is_zero()) {
    out.y += include_.apply(w);
    for (int i = 1; i <= d - 1; ++i) p[static_cast<std::size_t>(d - 1 - i)] -= c[static_cast<std::size_t>(i - 1)] * w;
  }
  for (int k = 0; k <= d - 2; ++k) out.x[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k)];
  return out;
}

Point BlowupModel::extract(const Raw& r) const {
  const int d = codim();
  const int c = d - 2;
  const auto& ch = normal_.chern;
  auto chern = [&](int i) { return i == 0 ? center_->one() : ch[static_cast<std::size_t>(i - 1)]; };
  // g_* of a z-polynomial with center coefficients.
  auto gpush = [&](const std::vector<Element>& q) {
    Element s = center_->zero();
    for (std::size_t k = static_cast<std::size_t>(d - 1); k < q.size(); ++k) {
      const std::size_t m = k - static_cast<std::size_t>(d - 1);
      if (m < segre_.size()) s += q[k] * segre_[m];
    }
    return s;
  };

  Point out = zero();
  const Element y = r.y.ring() ? r.y : ambient_->zero();
  // f_* z = y + i_* g_* P
  out.y = y + include_.apply(gpush(r.p));
  // j^* z = g^*i^*y - z P
  std::vector<Element> jz(r.p.size() + 1, center_->zero());
  jz[0] = restrict_.apply(y);
  for (std::size_t k = 0; k < r.p.size(); ++k)
    if (r.p[k].ring()) jz[k + 1] -= r.p[k];
  // The decomposition reads off g_*(gamma_(c-r) j^*z), which is minus the
  // stored coordinate.
  for (int slot = 0; slot <= c; ++slot) {
    const int m = c - slot;
    std::vector<Element> prod(jz.size() + static_cast<std::size_t>(m), center_->zero());
    for (int i = 0; i <= m; ++i) {
      const Element ci = chern(i);
      if (ci.is_zero()) continue;
      for (std::size_t k = 0; k < jz.size(); ++k) {
        if (jz[k].is_zero()) continue;
        prod[k + static_cast<std::size_t>(m - i)] += ci * jz[k];
      }
    }
    out.x[static_cast<std::size_t>(slot)] = -gpush(prod);
  }
  return out;
}

std::size_t BlowupModel::dim(int q) const {
  std::size_t n = ambient_->dim(q);
  for (int r = 0; r <= codim() - 2; ++r) n += center_->dim(q - 1 - r);
  return n;
}

std::vector<std::size_t> BlowupModel::hilbert_function() const {
  std::vector<std::size_t> h;
  for (int q = 0; q <= top_degree(); ++q) h.push_back(dim(q));
  return h;
}

Point BlowupModel::basis_point(int q, std::size_t i) const {
  Vector v(dim(q));
  v.at(i) = 1;
  return from_coords(q, v);
}

Vector BlowupModel::coords(const Point& a, int q) const {
  Vector v = ambient_->coords(a.y, q);
  for (int r = 0; r <= codim() - 2; ++r) {
    const int e = q - 1 - r;
    if (e < 0) continue;
    const Vector x = center_->coords(a.x[static_cast<std::size_t>(r)], e);
    v.insert(v.end(), x.begin(), x.end());
  }
  return v;
}

Point BlowupModel::from_coords(int q, const Vector& v) const {
  if (v.size() != dim(q)) throw DomainError("blowup coordinates have the wrong length");
  Point p = zero();
  std::size_t off = 0;
  const std::size_t ny = ambient_->dim(q);
  p.y = ambient_->from_coords(q, Vector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(ny)));
  off = ny;
  for (int r = 0; r <= codim() - 2; ++r) {
    const int e = q - 1 - r;
    if (e < 0) continue;
    const std::size_t n = center_->dim(e);
    p.x[static_cast<std::size_t>(r)] = center_->from_coords(
        e, Vector(v.begin() + static_cast<std::ptrdiff_t>(off), v.begin() + static_cast<std::ptrdiff_t>(off + n)));
    off += n;
  }
  return p;
}

std::string BlowupModel::str(const Point& a) const {
  std::string s = "(" + a.y.str() + ";";
  for (std::size_t r = 0; r < a.x.size(); ++r) s += (r ? ", " : " ") + a.x[r].str();
  return s + ")";
}

std::vector<std::string> BlowupModel::check_product_rules() const {
  std::vector<std::string> bad;
  const int top = top_degree();
  for (int q1 = 0; q1 <= top; ++q1) {
    for (int q2 = q1; q1 + q2 <= top; ++q2) {
      for (std::size_t i = 0; i < dim(q1); ++i) {
        const Point a = basis_point(q1, i);
        for (std::size_t j = 0; j < dim(q2); ++j) {
          const Point b = basis_point(q2, j);
          const Raw r = multiply_raw(a, b);
          const Point viaA = normalize(r);
          const Point viaB = extract(r);
          if (!equal(viaA, viaB)) {
            bad.push_back(str(a) + " * " + str(b) + ": key formula gives " + str(viaA) +
                          ", decomposition gives " + str(viaB));
          }
          if (!equal(viaA, multiply(b, a))) bad.push_back(str(a) + " * " + str(b) + ": not commutative");
        }
      }
    }
  }
  return bad;
}

std::vector<std::string> BlowupModel::check_round_trip() const {
  std::vector<std::string> bad;
  for (int q = 0; q <= top_degree(); ++q) {
    for (std::size_t i = 0; i < dim(q); ++i) {
      const Point b = basis_point(q, i);
      const Point back = extract(raw(b));
      if (!equal(b, back)) bad.push_back(str(b) + " comes back as " + str(back));
    }
  }
  return bad;
}

// ---------------------------------------------------------------- presentation

Element BlowupPresentation::to_element(const BlowupModel& m, const Point& p) const {
  Element out = ring->zero();
  for (int q = 0; q <= ring->top_degree(); ++q) {
    if (ring->dim(q) == 0) continue;
    out += ring->from_coords(q, inverse[static_cast<std::size_t>(q)].apply(m.coords(p, q)));
  }
  return out;
}

Point BlowupPresentation::to_point(const BlowupModel& m, const Element& e) const {
  if (!e.is_zero() && e.ring() != ring) throw DomainError(e.str() + " is not in " + ring->name());
  Point out = m.zero();
  for (int q = 0; q <= ring->top_degree(); ++q) {
    if (ring->dim(q) == 0) continue;
    const Vector c = ring->coords(e.is_zero() ? ring->zero() : e, q);
    if (is_zero(c)) continue;
    out = m.add(out, m.from_coords(q, forward[static_cast<std::size_t>(q)].apply(c)));
  }
  return out;
}

namespace {

// Model value of every monomial in the presentation generators, memoized.
class MonomialValues {
 public:
  MonomialValues(const BlowupModel& m, const std::vector<Generator>& gens,
                 const std::vector<Point>& points)
      : m_(m), gens_(gens), points_(points) {}

  const Point& operator()(const Exponents& e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    std::size_t k = e.size();
    while (k > 0 && e[k - 1] == 0) --k;
    Point v = m_.pull(m_.ambient()->one());
    if (k > 0) {
      Exponents prev = e;
      --prev[k - 1];
      v = m_.multiply((*this)(prev), points_[k - 1]);
    }
    return cache_.emplace(e, std::move(v)).first->second;
  }

 private:
  const BlowupModel& m_;
  const std::vector<Generator>& gens_;
  const std::vector<Point>& points_;
  std::map<Exponents, Point> cache_;
};

std::size_t span_rank(const BlowupModel& m, MonomialValues& values,
                      const std::vector<Generator>& gens, int q) {
  RowSpace span(m.dim(q));
  for (const auto& e : enumerate_monomials(gens, q)) {
    span.insert(m.coords(values(e), q));
    if (span.full()) break;
  }
  return span.rank();
}

}  // namespace

BlowupPresentation emit_presentation(const BlowupModel& m, const std::string& ring_name,
                                     const std::map<std::string, std::string>& names) {
  const RingPtr& amb = m.ambient();
  const RingPtr& ctr = m.center();
  std::vector<Generator> gens = amb->generators();
  std::vector<Point> points;
  for (std::size_t i = 0; i < amb->ngens(); ++i) points.push_back(m.pull(amb->gen(i)));

  std::set<std::string> used;
  for (const auto& g : gens) used.insert(g.name);
  auto claim = [&](const std::string& n) {
    if (!used.insert(n).second) {
      throw ConstructionError("blowup " + m.name() + ": generator name " + n + " is already taken");
    }
  };
  claim(m.exceptional_name());
  gens.push_back({m.exceptional_name(), 1});
  points.push_back(m.exceptional(ctr->one()));

  for (const auto& [from, to] : names) {
    if (!ctr->has_generator(from)) {
      throw ConstructionError("blowup " + m.name() + ": names refers to " + from +
                              ", which is not a generator of " + ctr->name());
    }
  }
  for (std::size_t k = 0; k < ctr->ngens(); ++k) {
    const Element x = ctr->gen(k);
    bool restricted = false;
    for (const auto& img : m.restriction().images()) restricted = restricted || img == x;
    if (restricted) continue;
    const std::string& cname = ctr->generators()[k].name;
    auto it = names.find(cname);
    const std::string n = it != names.end() ? it->second : m.exceptional_name() + "_" + cname;
    claim(n);
    gens.push_back({n, ctr->generators()[k].degree + 1});
    points.push_back(m.exceptional(x));
  }

  // If the chosen classes do not generate, add j_* of center basis classes
  // until every degree is spanned.
  for (int q = 1; q <= m.top_degree(); ++q) {
    MonomialValues values(m, gens, points);
    if (span_rank(m, values, gens, q) == m.dim(q)) continue;
    const int e = q - 1;
    for (std::size_t i = 0; i < ctr->dim(e); ++i) {
      const std::string n = m.exceptional_name() + "_b" + std::to_string(e) + "_" + std::to_string(i);
      claim(n);
      gens.push_back({n, q});
      points.push_back(m.exceptional(ctr->basis_element(e, i)));
      MonomialValues again(m, gens, points);
      if (span_rank(m, again, gens, q) == m.dim(q)) break;
    }
  }

  // Harvest relations degree by degree, keeping only those not already in
  // the ideal generated by lower-degree ones.
  MonomialValues values(m, gens, points);
  std::vector<Poly> rels;
  std::vector<int> rel_degree;
  for (int q = 1; q <= m.top_degree(); ++q) {
    const auto mons = enumerate_monomials(gens, q);
    std::map<Exponents, std::size_t> index;
    for (std::size_t i = 0; i < mons.size(); ++i) index.emplace(mons[i], i);
    RowSpace ideal(mons.size());
    for (std::size_t r = 0; r < rels.size(); ++r) {
      for (const auto& c : enumerate_monomials(gens, q - rel_degree[r])) {
        Vector row(mons.size());
        for (const auto& [e, coef] : rels[r].terms()) {
          Exponents prod = e;
          for (std::size_t k = 0; k < prod.size(); ++k) prod[k] += c[k];
          row[index.at(prod)] += coef;
        }
        ideal.insert(std::move(row));
      }
    }
    Matrix eval(m.dim(q), mons.size());
    for (std::size_t j = 0; j < mons.size(); ++j) {
      const Vector c = m.coords(values(mons[j]), q);
      for (std::size_t i = 0; i < c.size(); ++i) eval(i, j) = c[i];
    }
    for (auto& v : kernel_basis(eval)) {
      if (!ideal.insert(v)) continue;
      Poly p(gens.size());
      for (std::size_t j = 0; j < v.size(); ++j) p.add_term(mons[j], v[j]);
      rels.push_back(std::move(p));
      rel_degree.push_back(q);
    }
  }

  RingPtr ring = PresentedRing::make(ring_name, gens, rels, m.top_degree());
  if (ring->hilbert_function() != m.hilbert_function()) {
    throw ConstructionError("blowup " + m.name() + ": emitted presentation does not match the model");
  }

  BlowupPresentation out{ring,
                         RingMorphism::identity(ring),
                         LinearMap::zero("tmp", ring, amb, 0),
                         points,
                         {},
                         {}};
  for (int q = 0; q <= ring->top_degree(); ++q) {
    Matrix fwd(m.dim(q), ring->dim(q));
    for (std::size_t j = 0; j < ring->dim(q); ++j) {
      const Vector c = m.coords(values(ring->basis(q)[j]), q);
      for (std::size_t i = 0; i < c.size(); ++i) fwd(i, j) = c[i];
    }
    auto inv = inverse(fwd);
    if (!inv) throw ConstructionError("blowup " + m.name() + ": emitted basis is not a model basis");
    out.forward.push_back(std::move(fwd));
    out.inverse.push_back(std::move(*inv));
  }

  std::vector<Element> images;
  for (const auto& g : amb->generators()) images.push_back(ring->gen(g.name));
  out.pullback = RingMorphism::make(ring_name + "_fpull", amb, ring, std::move(images));

  std::vector<std::vector<Element>> pushed(static_cast<std::size_t>(ring->top_degree()) + 1);
  for (int q = 0; q <= ring->top_degree(); ++q) {
    for (std::size_t i = 0; i < ring->dim(q); ++i) {
      pushed[static_cast<std::size_t>(q)].push_back(out.to_point(m, ring->basis_element(q, i)).y);
    }
  }
  out.pushforward = LinearMap::from_basis_images(ring_name + "_fpush", ring, amb, 0, pushed);
  return out;
}

Point strict_transform(const BlowupModel& m, const Element& v, const std::optional<Element>& v_cap_x,
                       TransformCase c) {
  switch (c) {
    case TransformCase::ExpectedDimension:
      return m.pull(v);
    case TransformCase::ExcessOne:
      if (!v_cap_x) throw DomainError("excess-one strict transform needs the class of V meet X");
      return m.add(m.pull(v), m.exceptional(*v_cap_x), -1);
  }
  throw DomainError("unsupported strict transform case");
}

}  // namespace chowkit
