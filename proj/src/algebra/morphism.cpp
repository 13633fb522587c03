// SPDX-License-Identifier: Apache-2.0
#include "chowkit/morphism.hpp"

#include <map>

#include "chowkit/error.hpp"

namespace chowkit {

namespace {

Element in_ring(const Element& x, const RingPtr& r, const std::string& what) {
  if (!x.ring() || x.is_zero()) return r->zero();
  if (x.ring() != r) {
    throw DomainError(what + ": " + x.str() + " is in " + x.ring()->name() + ", expected " + r->name());
  }
  return x;
}

}  // namespace

// ---------------------------------------------------------------- RingMorphism

RingMorphism RingMorphism::make(std::string name, RingPtr source, RingPtr target,
                                std::vector<Element> images) {
  if (images.size() != source->ngens()) {
    throw DomainError("pullback " + name + ": expected " + std::to_string(source->ngens()) +
                      " generator images, got " + std::to_string(images.size()));
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Generator& g = source->generators()[i];
    images[i] = in_ring(images[i], target, "pullback " + name + " image of " + g.name);
    if (!images[i].is_zero() && (!images[i].is_homogeneous() || images[i].degree() != g.degree)) {
      throw DomainError("pullback " + name + ": image of " + g.name + " (degree " +
                        std::to_string(g.degree) + ") is " + images[i].str() +
                        ", which is not homogeneous of that degree");
    }
  }
  for (const auto& rel : source->relations()) {
    const Element v = PresentedRing::substitute(rel, images, target);
    if (!v.is_zero()) {
      throw RelationViolation("pullback " + name + ": relation " +
                              format_poly(rel, source->generators()) + " maps to " + v.str() +
                              " in " + target->name());
    }
  }
  // Monomials the source truncates away must also die in the target.
  for (int d = source->top_degree() + 1; d <= target->top_degree(); ++d) {
    for (const auto& e : enumerate_monomials(source->generators(), d)) {
      const Element v = PresentedRing::substitute(Poly::monomial(e), images, target);
      if (!v.is_zero()) {
        throw RelationViolation("pullback " + name + ": " +
                                format_monomial(e, source->generators()) + " is zero in " +
                                source->name() + " but maps to " + v.str());
      }
    }
  }

  RingMorphism m;
  m.name_ = std::move(name);
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.images_ = std::move(images);
  m.basis_images_.resize(static_cast<std::size_t>(m.source_->top_degree()) + 1);
  for (int d = 0; d <= m.source_->top_degree(); ++d) {
    for (const auto& e : m.source_->basis(d)) {
      m.basis_images_[static_cast<std::size_t>(d)].push_back(
          PresentedRing::substitute(Poly::monomial(e), m.images_, m.target_));
    }
  }
  return m;
}

RingMorphism RingMorphism::identity(const RingPtr& r) {
  std::vector<Element> imgs;
  for (std::size_t i = 0; i < r->ngens(); ++i) imgs.push_back(r->gen(i));
  return make("id_" + r->name(), r, r, std::move(imgs));
}

Element RingMorphism::apply(const Element& x) const {
  const Element v = in_ring(x, source_, "pullback " + name_);
  Element out = target_->zero();
  for (const auto& [k, c] : v.terms()) {
    out += basis_images_[static_cast<std::size_t>(k.degree)][k.index] * c;
  }
  return out;
}

Element RingMorphism::apply(const Poly& p) const {
  return PresentedRing::substitute(p, images_, target_);
}

// ---------------------------------------------------------------- LinearMap

LinearMap LinearMap::from_declarations(std::string name, RingPtr source, RingPtr target,
                                       int shift, std::vector<Declaration> decls,
                                       const RingMorphism* over) {
  if (over && (over->source() != target || over->target() != source)) {
    throw DomainError("pushforward " + name + ": closure pullback " + over->name() +
                      " does not run from " + target->name() + " to " + source->name());
  }
  const std::string who = "pushforward " + name;
  std::map<int, std::vector<Declaration>> by_degree;
  auto add = [&](const Element& x, const Element& y) {
    if (x.is_zero()) {
      if (!y.is_zero()) throw DomainError(who + ": declares 0 => " + y.str());
      return;
    }
    if (!x.is_homogeneous()) throw DomainError(who + ": source class " + x.str() + " is not homogeneous");
    const int d = x.degree();
    if (!y.is_zero() && (!y.is_homogeneous() || y.degree() != d + shift)) {
      throw DomainError(who + ": degree mismatch, " + x.str() + " has degree " + std::to_string(d) +
                        " but its image " + y.str() + " does not have degree " +
                        std::to_string(d + shift));
    }
    by_degree[d].push_back({x, y});
  };
  for (auto& dcl : decls) {
    dcl.x = in_ring(dcl.x, source, who + " source");
    dcl.y = in_ring(dcl.y, target, who + " image");
    add(dcl.x, dcl.y);
    if (!over) continue;
    for (int e = 1; e <= target->top_degree(); ++e) {
      for (std::size_t i = 0; i < target->dim(e); ++i) {
        const Element a = target->basis_element(e, i);
        add(over->apply(a) * dcl.x, a * dcl.y);
      }
    }
  }

  LinearMap m;
  m.name_ = std::move(name);
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.shift_ = shift;
  m.pieces_.resize(static_cast<std::size_t>(m.source_->top_degree()) + 1);
  for (int d = 0; d <= m.source_->top_degree(); ++d) {
    Piece& p = m.pieces_[static_cast<std::size_t>(d)];
    const int td = d + shift;
    p.nx = m.source_->dim(d);
    p.trivially_zero = td < 0 || td > m.target_->top_degree();
    if (p.trivially_zero) continue;
    p.ny = m.target_->dim(td);
    const auto& ds = by_degree[d];
    Matrix a(ds.size(), p.nx + p.ny);
    for (std::size_t r = 0; r < ds.size(); ++r) {
      const Vector xc = m.source_->coords(ds[r].x, d);
      const Vector yc = m.target_->coords(ds[r].y, td);
      for (std::size_t j = 0; j < p.nx; ++j) a(r, j) = xc[j];
      for (std::size_t j = 0; j < p.ny; ++j) a(r, p.nx + j) = yc[j];
    }
    p.ech = rref(std::move(a));
    for (std::size_t k = 0; k < p.ech.pivots.size(); ++k) {
      if (p.ech.pivots[k] < p.nx) continue;
      Vector y(p.ny);
      for (std::size_t j = 0; j < p.ny; ++j) y[j] = p.ech.reduced(k, p.nx + j);
      throw DomainError(who + ": inconsistent declarations in degree " + std::to_string(d) +
                        ", they force 0 => " + m.target_->from_coords(td, y).str());
    }
  }
  return m;
}

LinearMap LinearMap::from_basis_images(std::string name, RingPtr source, RingPtr target,
                                       int shift,
                                       const std::vector<std::vector<Element>>& images) {
  std::vector<Declaration> decls;
  for (int d = 0; d <= source->top_degree(); ++d) {
    for (std::size_t i = 0; i < source->dim(d); ++i) {
      Element y = target->zero();
      if (static_cast<std::size_t>(d) < images.size() && i < images[static_cast<std::size_t>(d)].size()) {
        y = images[static_cast<std::size_t>(d)][i];
      }
      decls.push_back({source->basis_element(d, i), y});
    }
  }
  return from_declarations(std::move(name), std::move(source), std::move(target), shift,
                           std::move(decls));
}

LinearMap LinearMap::zero(std::string name, RingPtr source, RingPtr target, int shift) {
  return from_basis_images(std::move(name), std::move(source), std::move(target), shift, {});
}

std::optional<Element> LinearMap::eval(const Element& x, std::string* missing) const {
  const int d = x.degree();
  if (d < 0 || d > source_->top_degree()) return target_->zero();
  const Piece& p = pieces_[static_cast<std::size_t>(d)];
  if (p.trivially_zero) return target_->zero();
  Vector residual = source_->coords(x, d);
  Vector y(p.ny);
  for (std::size_t k = 0; k < p.ech.pivots.size(); ++k) {
    const Rational coef = residual[p.ech.pivots[k]];
    if (is_zero(coef)) continue;
    for (std::size_t j = 0; j < p.nx; ++j)
      if (!is_zero(p.ech.reduced(k, j))) residual[j] -= coef * p.ech.reduced(k, j);
    for (std::size_t j = 0; j < p.ny; ++j)
      if (!is_zero(p.ech.reduced(k, p.nx + j))) y[j] += coef * p.ech.reduced(k, p.nx + j);
  }
  for (std::size_t j = 0; j < p.nx; ++j) {
    if (!is_zero(residual[j])) {
      if (missing) *missing = source_->format_basis_monomial(d, j);
      return std::nullopt;
    }
  }
  return target_->from_coords(d + shift_, y);
}

Element LinearMap::apply(const Element& x) const {
  const Element v = in_ring(x, source_, "pushforward " + name_);
  Element out = target_->zero();
  for (int d = 0; d <= source_->top_degree(); ++d) {
    const Element part = v.part(d);
    if (part.is_zero()) continue;
    std::string missing;
    auto y = eval(part, &missing);
    if (!y) {
      throw UndeclaredPushforward("pushforward " + name_ + " is not declared on " + missing +
                                  " (needed for " + part.str() + ")");
    }
    out += *y;
  }
  return out;
}

std::optional<Element> LinearMap::try_basis(int d, std::size_t i) const {
  return eval(source_->basis_element(d, i), nullptr);
}

bool LinearMap::is_total() const {
  for (const auto& p : pieces_) {
    if (p.trivially_zero) continue;
    std::size_t rank = 0;
    for (auto c : p.ech.pivots)
      if (c < p.nx) ++rank;
    if (rank != p.nx) return false;
  }
  return true;
}

Matrix LinearMap::matrix(int d) const {
  const int td = d + shift_;
  const std::size_t rows = (td < 0 || td > target_->top_degree()) ? 0 : target_->dim(td);
  Matrix m(rows, source_->dim(d));
  for (std::size_t i = 0; i < source_->dim(d); ++i) {
    const Element y = apply(source_->basis_element(d, i));
    if (rows == 0) continue;
    const Vector c = target_->coords(y, td);
    for (std::size_t r = 0; r < rows; ++r) m(r, i) = c[r];
  }
  return m;
}

std::vector<Declaration> LinearMap::basis_declarations() const {
  std::vector<Declaration> out;
  for (int d = 0; d <= source_->top_degree(); ++d) {
    for (std::size_t i = 0; i < source_->dim(d); ++i) {
      if (auto y = try_basis(d, i)) out.push_back({source_->basis_element(d, i), *y});
    }
  }
  return out;
}

// ---------------------------------------------------------------- validators

std::vector<Violation> check_projection_formula(const RingMorphism& pull, const LinearMap& push) {
  std::vector<Violation> out;
  if (pull.target() != push.source() || push.target() != pull.source()) {
    out.push_back({"setup", "pullback " + pull.name() + " and pushforward " + push.name() +
                                " do not run between the same pair of rings"});
    return out;
  }
  const RingPtr& base = pull.source();
  const RingPtr& total = pull.target();
  for (int da = 0; da <= base->top_degree(); ++da) {
    for (std::size_t ia = 0; ia < base->dim(da); ++ia) {
      const Element a = base->basis_element(da, ia);
      const Element pa = pull.apply(a);
      for (int db = 0; db <= total->top_degree(); ++db) {
        for (std::size_t ib = 0; ib < total->dim(db); ++ib) {
          const Element b = total->basis_element(db, ib);
          const std::string where = "a=" + a.str() + ", b=" + b.str();
          try {
            const Element lhs = push.apply(pa * b);
            const Element rhs = a * push.apply(b);
            if (!(lhs == rhs)) {
              out.push_back({where, "push(pull(a)*b) = " + lhs.str() + " but a*push(b) = " + rhs.str()});
            }
          } catch (const UndeclaredPushforward& e) {
            out.push_back({where, e.what()});
          }
        }
      }
    }
  }
  return out;
}

std::vector<Violation> verify_finite_cover(const RingMorphism& pull, const LinearMap& push,
                                           const Rational& n) {
  std::vector<Violation> out;
  if (pull.target() != push.source() || push.target() != pull.source()) {
    out.push_back({"setup", "pullback and pushforward do not run between the same pair of rings"});
    return out;
  }
  if (is_zero(n)) {
    out.push_back({"setup", "cover degree must be nonzero"});
    return out;
  }
  const RingPtr& base = pull.source();
  for (int d = 0; d <= base->top_degree(); ++d) {
    for (std::size_t i = 0; i < base->dim(d); ++i) {
      const Element a = base->basis_element(d, i);
      try {
        const Element back = push.apply(pull.apply(a)) * (1 / n);
        if (!(back == a)) out.push_back({"a=" + a.str(), "(1/n) push(pull(a)) = " + back.str()});
      } catch (const UndeclaredPushforward& e) {
        out.push_back({"a=" + a.str(), e.what()});
      }
    }
  }
  return out;
}

std::vector<std::size_t> kernel_dims(const LinearMap& f) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= f.source()->top_degree(); ++d) {
    out.push_back(f.source()->dim(d) - rank(f.matrix(d)));
  }
  return out;
}

std::vector<std::size_t> image_dims(const LinearMap& f) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= f.source()->top_degree(); ++d) out.push_back(rank(f.matrix(d)));
  return out;
}

std::vector<std::size_t> morphism_ranks(const RingMorphism& f) {
  std::vector<std::size_t> out;
  const RingPtr& s = f.source();
  const RingPtr& t = f.target();
  for (int d = 0; d <= s->top_degree(); ++d) {
    if (d > t->top_degree()) {
      out.push_back(0);
      continue;
    }
    Matrix m(t->dim(d), s->dim(d));
    for (std::size_t i = 0; i < s->dim(d); ++i) {
      const Vector c = t->coords(f.apply(s->basis_element(d, i)), d);
      for (std::size_t r = 0; r < c.size(); ++r) m(r, i) = c[r];
    }
    out.push_back(rank(m));
  }
  return out;
}

}  // namespace chowkit
