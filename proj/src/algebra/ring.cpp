// SPDX-License-Identifier: Apache-2.0
#include "chowkit/ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "chowkit/error.hpp"

namespace chowkit {

// ---------------------------------------------------------------- Poly

Poly Poly::constant(std::size_t ngens, const Rational& c) {
  Poly p(ngens);
  p.add_term(Exponents(ngens, 0), c);
  return p;
}

Poly Poly::generator(std::size_t ngens, std::size_t index) {
  Poly p(ngens);
  Exponents e(ngens, 0);
  e.at(index) = 1;
  p.add_term(e, 1);
  return p;
}

Poly Poly::monomial(const Exponents& e, const Rational& c) {
  Poly p(e.size());
  p.add_term(e, c);
  return p;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != ngens_) throw DomainError("polynomial term has the wrong number of generators");
  if (chowkit::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (chowkit::is_zero(it->second)) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (ngens_ != o.ngens_) throw DomainError("adding polynomials over different generators");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (ngens_ != o.ngens_) throw DomainError("subtracting polynomials over different generators");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (chowkit::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.ngens_ != b.ngens_) throw DomainError("multiplying polynomials over different generators");
  Poly out(a.ngens_);
  Exponents e(a.ngens_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

int monomial_degree(const Exponents& e, const std::vector<Generator>& gens) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * gens[i].degree;
  return d;
}

std::vector<int> term_degrees(const Poly& p, const std::vector<Generator>& gens) {
  std::set<int> ds;
  for (const auto& [e, c] : p.terms()) ds.insert(monomial_degree(e, gens));
  return {ds.begin(), ds.end()};
}

std::string format_monomial(const Exponents& e, const std::vector<Generator>& gens) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += gens[i].name;
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format_terms(const std::vector<std::pair<std::string, Rational>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool unit = m == "1";
    const Rational mag = abs(c);
    std::string body;
    if (unit) {
      body = mag.get_str();
    } else if (mag == 1) {
      body = m;
    } else {
      body = mag.get_str() + "*" + m;
    }
    if (first) {
      if (sgn(c) < 0) {
        // Keep a leading minus from reading as part of the first factor.
        const bool compound = body.find('*') != std::string::npos;
        out += compound && mag == 1 ? "-(" + body + ")" : "-" + body;
      } else {
        out += body;
      }
      first = false;
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

std::string format_poly(const Poly& p, const std::vector<Generator>& gens) {
  // Same layout as elements: by degree, then list order.
  std::vector<std::pair<Exponents, Rational>> ts(p.terms().begin(), p.terms().end());
  std::stable_sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
    return monomial_degree(a.first, gens) < monomial_degree(b.first, gens);
  });
  std::vector<std::pair<std::string, Rational>> parts;
  for (const auto& [e, c] : ts) parts.emplace_back(format_monomial(e, gens), c);
  return format_terms(parts);
}

std::vector<Exponents> enumerate_monomials(const std::vector<Generator>& gens, int d) {
  std::vector<Exponents> out;
  if (d < 0) return out;
  Exponents e(gens.size(), 0);
  // Assign the largest feasible exponent to the first generator first so the
  // output is already in list order.
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == gens.size()) {
      if (left == 0) out.push_back(e);
      return;
    }
    for (int k = left / gens[i].degree; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k * gens[i].degree);
    }
    e[i] = 0;
  };
  rec(0, d);
  return out;
}

// ---------------------------------------------------------------- ring

RingPtr PresentedRing::make(std::string name, std::vector<Generator> gens,
                            std::vector<Poly> relations, int top_degree) {
  if (top_degree < 0) throw ConstructionError("ring " + name + ": negative top degree");
  std::set<std::string> seen;
  for (const auto& g : gens) {
    if (g.degree < 1) {
      throw ConstructionError("ring " + name + ": generator " + g.name + " has degree " +
                              std::to_string(g.degree) + " (must be at least 1)");
    }
    if (!seen.insert(g.name).second) {
      throw ConstructionError("ring " + name + ": duplicate generator " + g.name);
    }
  }
  for (const auto& r : relations) {
    if (r.ngens() != gens.size()) {
      throw ConstructionError("ring " + name + ": relation over the wrong generator list");
    }
    if (term_degrees(r, gens).size() > 1) {
      throw ConstructionError("ring " + name + ": inhomogeneous relation " + format_poly(r, gens));
    }
  }
  auto ring = std::shared_ptr<PresentedRing>(new PresentedRing());
  ring->name_ = std::move(name);
  ring->gens_ = std::move(gens);
  ring->relations_ = std::move(relations);
  ring->top_ = top_degree;
  ring->build();
  return ring;
}

namespace {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// a - f*b, both sorted by column.
SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - f * b[j].second;
      if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// Sparse echelon over the degree-d monomials. Relation multiples are mostly
// short, so top-reduction on sparse rows keeps the large fiber-product rings
// cheap to build.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t n) : n_(n), rows_(n) {}

  bool full() const { return rank_ == n_; }

  void insert(SparseRow row) {
    while (!row.empty()) {
      const std::size_t lead = row.front().first;
      auto& piv = rows_[lead];
      if (!piv) {
        const Rational inv = 1 / row.front().second;
        for (auto& [c, v] : row) v *= inv;
        piv = std::move(row);
        ++rank_;
        return;
      }
      const Rational f = row.front().second;
      row = axpy(row, f, *piv);
    }
  }

  // Tail-reduce every pivot row, largest pivot first, so that afterwards no
  // pivot row mentions another pivot column.
  void interreduce() {
    for (std::size_t c = n_; c-- > 0;) {
      if (!rows_[c]) continue;
      SparseRow& row = *rows_[c];
      for (std::size_t k = 1; k < row.size();) {
        const std::size_t col = row[k].first;
        if (rows_[col]) {
          const Rational f = row[k].second;
          row = axpy(row, f, *rows_[col]);
          // row[0] is untouched; rescan from the same position.
        } else {
          ++k;
        }
      }
    }
  }

  const std::optional<SparseRow>& row(std::size_t c) const { return rows_[c]; }

 private:
  std::size_t n_;
  std::size_t rank_ = 0;
  std::vector<std::optional<SparseRow>> rows_;
};

}  // namespace

void PresentedRing::build() {
  pieces_.assign(static_cast<std::size_t>(top_) + 1, {});
  index_.assign(static_cast<std::size_t>(top_) + 1, {});

  // Relations with their degrees; anything above the top is already zero.
  std::vector<std::pair<int, const Poly*>> rels;
  for (const auto& r : relations_) {
    if (r.is_zero()) continue;
    const int d = term_degrees(r, gens_).front();
    if (d <= top_) rels.emplace_back(d, &r);
  }

  for (int d = 0; d <= top_; ++d) {
    Piece& piece = pieces_[static_cast<std::size_t>(d)];
    auto& index = index_[static_cast<std::size_t>(d)];
    piece.monomials = enumerate_monomials(gens_, d);
    const std::size_t n = piece.monomials.size();
    for (std::size_t i = 0; i < n; ++i) index.emplace(piece.monomials[i], i);

    SparseEchelon ech(n);
    Exponents prod(gens_.size());
    for (const auto& [rd, rel] : rels) {
      if (rd > d || ech.full()) continue;
      for (const auto& m : pieces_[static_cast<std::size_t>(d - rd)].monomials) {
        std::map<std::size_t, Rational> acc;
        for (const auto& [e, c] : rel->terms()) {
          for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = e[k] + m[k];
          acc[index.at(prod)] += c;
        }
        SparseRow row;
        for (auto& [col, v] : acc)
          if (!is_zero(v)) row.emplace_back(col, std::move(v));
        ech.insert(std::move(row));
        if (ech.full()) break;
      }
    }
    ech.interreduce();

    std::vector<std::size_t> basis_pos(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!ech.row(i)) {
        basis_pos[i] = piece.basis.size();
        piece.basis.push_back(piece.monomials[i]);
      }
    }
    const std::size_t dim = piece.basis.size();
    piece.normal.assign(n, Vector(dim));
    for (std::size_t i = 0; i < n; ++i) {
      if (basis_pos[i] != n) {
        piece.normal[i][basis_pos[i]] = 1;
        continue;
      }
      const SparseRow& row = *ech.row(i);
      for (std::size_t k = 1; k < row.size(); ++k) piece.normal[i][basis_pos[row[k].first]] = -row[k].second;
    }
  }
}

std::size_t PresentedRing::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  throw DomainError("ring " + name_ + " has no generator " + name);
}

bool PresentedRing::has_generator(const std::string& name) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const Generator& g) { return g.name == name; });
}

const std::vector<Exponents>& PresentedRing::monomials(int d) const {
  static const std::vector<Exponents> kEmpty;
  if (d < 0 || d > top_) return kEmpty;
  return pieces_[static_cast<std::size_t>(d)].monomials;
}

const std::vector<Exponents>& PresentedRing::basis(int d) const {
  static const std::vector<Exponents> kEmpty;
  if (d < 0 || d > top_) return kEmpty;
  return pieces_[static_cast<std::size_t>(d)].basis;
}

std::size_t PresentedRing::dim(int d) const { return basis(d).size(); }

std::vector<std::size_t> PresentedRing::hilbert_function() const {
  std::vector<std::size_t> h;
  for (int d = 0; d <= top_; ++d) h.push_back(dim(d));
  return h;
}

std::size_t PresentedRing::total_dim() const {
  std::size_t n = 0;
  for (int d = 0; d <= top_; ++d) n += dim(d);
  return n;
}

const Vector* PresentedRing::lookup(const Exponents& e, int* degree) const {
  const int d = monomial_degree(e, gens_);
  *degree = d;
  if (d > top_) return nullptr;
  const auto& idx = index_[static_cast<std::size_t>(d)];
  return &pieces_[static_cast<std::size_t>(d)].normal[idx.at(e)];
}

Element PresentedRing::zero() const { return Element(shared_from_this()); }

Element PresentedRing::one() const { return scalar(1); }

Element PresentedRing::scalar(const Rational& c) const {
  return reduce(Poly::constant(gens_.size(), c));
}

Element PresentedRing::gen(const std::string& name) const { return gen(generator_index(name)); }

Element PresentedRing::gen(std::size_t index) const {
  return reduce(Poly::generator(gens_.size(), index));
}

Element PresentedRing::basis_element(int d, std::size_t i) const {
  Element::Terms t;
  t.emplace(BasisKey{d, i}, 1);
  return Element(shared_from_this(), std::move(t));
}

Element PresentedRing::monomial(const Exponents& e) const { return reduce(Poly::monomial(e)); }

Element PresentedRing::reduce(const Poly& p) const {
  if (p.ngens() != gens_.size() && !p.is_zero()) {
    throw DomainError("polynomial does not belong to ring " + name_);
  }
  Element::Terms out;
  for (const auto& [e, c] : p.terms()) {
    int d = 0;
    const Vector* nf = lookup(e, &d);
    if (!nf) continue;
    for (std::size_t j = 0; j < nf->size(); ++j) {
      if (is_zero((*nf)[j])) continue;
      auto [it, ins] = out.try_emplace(BasisKey{d, j}, c * (*nf)[j]);
      if (!ins) it->second += c * (*nf)[j];
    }
  }
  std::erase_if(out, [](const auto& kv) { return is_zero(kv.second); });
  return Element(shared_from_this(), std::move(out));
}

Vector PresentedRing::coords(const Element& x, int d) const {
  if (x.ring().get() != this) throw DomainError("element is not in ring " + name_);
  Vector v(dim(d));
  for (const auto& [k, c] : x.terms())
    if (k.degree == d) v[k.index] = c;
  return v;
}

Element PresentedRing::from_coords(int d, const Vector& v) const {
  if (v.size() != dim(d)) throw DomainError("coordinate vector has the wrong length");
  Element::Terms t;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) t.emplace(BasisKey{d, i}, v[i]);
  return Element(shared_from_this(), std::move(t));
}

std::string PresentedRing::format_basis_monomial(int d, std::size_t i) const {
  return format_monomial(basis(d).at(i), gens_);
}

Element PresentedRing::substitute(const Poly& p, const std::vector<Element>& images,
                                  const RingPtr& target) {
  if (images.size() != p.ngens() && !p.is_zero()) {
    throw DomainError("substitution needs one image per generator");
  }
  // powers[i][k] = images[i]^k, filled on demand.
  std::vector<std::vector<Element>> powers(images.size());
  auto power = [&](std::size_t i, int k) -> const Element& {
    auto& ps = powers[i];
    if (ps.empty()) ps.push_back(target->one());
    while (static_cast<int>(ps.size()) <= k) ps.push_back(ps.back() * images[i]);
    return ps[static_cast<std::size_t>(k)];
  };
  Element out = target->zero();
  for (const auto& [e, c] : p.terms()) {
    Element term = target->scalar(c);
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------- Element

Element::Element(RingPtr ring, Terms terms) : ring_(std::move(ring)), terms_(std::move(terms)) {}

int Element::degree() const {
  if (terms_.empty()) return -1;
  const int d = terms_.begin()->first.degree;
  if (terms_.rbegin()->first.degree != d) throw DomainError("element " + str() + " is not homogeneous");
  return d;
}

bool Element::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.degree == terms_.rbegin()->first.degree;
}

Element Element::part(int d) const {
  Terms t;
  for (const auto& [k, c] : terms_)
    if (k.degree == d) t.emplace(k, c);
  return Element(ring_, std::move(t));
}

Rational Element::constant() const {
  auto it = terms_.find(BasisKey{0, 0});
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_scaled(const Element& o, const Rational& c) {
  if (!ring_) ring_ = o.ring_;
  if (o.ring_ && ring_ != o.ring_) {
    throw DomainError("mixing elements of rings " + ring_->name() + " and " + o.ring_->name());
  }
  for (const auto& [k, v] : o.terms_) {
    auto [it, ins] = terms_.try_emplace(k, v * c);
    if (!ins) {
      it->second += v * c;
      if (chowkit::is_zero(it->second)) terms_.erase(it);
    }
  }
}

Element& Element::operator+=(const Element& o) {
  add_scaled(o, 1);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  add_scaled(o, -1);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (chowkit::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  if (!a.ring_ || !b.ring_) return Element(a.ring_ ? a.ring_ : b.ring_);
  if (a.ring_ != b.ring_) {
    throw DomainError("multiplying elements of rings " + a.ring_->name() + " and " +
                      b.ring_->name());
  }
  const PresentedRing& r = *a.ring_;
  std::map<int, Vector> acc;
  Exponents e(r.ngens());
  for (const auto& [ka, ca] : a.terms_) {
    const Exponents& ea = r.basis(ka.degree)[ka.index];
    for (const auto& [kb, cb] : b.terms_) {
      if (ka.degree + kb.degree > r.top_degree()) continue;
      const Exponents& eb = r.basis(kb.degree)[kb.index];
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      int d = 0;
      const Vector* nf = r.lookup(e, &d);
      if (!nf) continue;
      auto [it, ins] = acc.try_emplace(d, Vector(nf->size()));
      const Rational c = ca * cb;
      for (std::size_t j = 0; j < nf->size(); ++j)
        if (!is_zero((*nf)[j])) it->second[j] += c * (*nf)[j];
    }
  }
  Element::Terms t;
  for (const auto& [d, v] : acc)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!is_zero(v[j])) t.emplace(BasisKey{d, j}, v[j]);
  return Element(a.ring_, std::move(t));
}

Element Element::pow(int n) const {
  if (n < 0) throw DomainError("negative power");
  Element out = ring_->one();
  Element base = *this;
  while (n > 0) {
    if (n & 1) out = out * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return out;
}

bool operator==(const Element& a, const Element& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  return a.ring_ == b.ring_ && a.terms_ == b.terms_;
}

std::string Element::str() const {
  std::vector<std::pair<std::string, Rational>> parts;
  for (const auto& [k, c] : terms_) parts.emplace_back(ring_->format_basis_monomial(k.degree, k.index), c);
  return format_terms(parts);
}

// ---------------------------------------------------------------- derived rings

RingPtr quotient_by_classes(const RingPtr& r, const std::vector<Element>& classes,
                            std::string name) {
  std::vector<Poly> rels = r->relations();
  for (const auto& c : classes) {
    if (!c.is_homogeneous()) throw ConstructionError("quotient by inhomogeneous class " + c.str());
    if (c.ring() && c.ring() != r) throw DomainError("quotient class " + c.str() + " is not in " + r->name());
    rels.push_back(to_poly(c));
  }
  return PresentedRing::make(std::move(name), r->generators(), std::move(rels), r->top_degree());
}

RingPtr adjoin_class(const RingPtr& r, std::string name, const Generator& g,
                     const std::vector<Poly>& relations) {
  std::vector<Generator> gens = r->generators();
  gens.push_back(g);
  std::vector<Poly> rels;
  for (const auto& p : r->relations()) rels.push_back(transport_poly(p, r->generators(), gens));
  for (const auto& p : relations) rels.push_back(p);
  return PresentedRing::make(std::move(name), std::move(gens), std::move(rels), r->top_degree());
}

Poly to_poly(const Element& x) {
  if (!x.ring()) return Poly();
  const PresentedRing& r = *x.ring();
  Poly p(r.ngens());
  for (const auto& [k, c] : x.terms()) p.add_term(r.basis(k.degree)[k.index], c);
  return p;
}

Poly transport_poly(const Poly& p, const std::vector<Generator>& from,
                    const std::vector<Generator>& to) {
  std::vector<std::size_t> map(from.size(), to.size());
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < to.size(); ++j)
      if (from[i].name == to[j].name) map[i] = j;
  Poly out(to.size());
  for (const auto& [e, c] : p.terms()) {
    Exponents f(to.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] == to.size()) throw DomainError("generator " + from[i].name + " has no counterpart");
      f[map[i]] += e[i];
    }
    out.add_term(f, c);
  }
  return out;
}

}  // namespace chowkit
