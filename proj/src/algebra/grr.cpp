// SPDX-License-Identifier: Apache-2.0
#include "chowkit/grr.hpp"

#include <algorithm>
#include <utility>

#include "chowkit/error.hpp"

namespace chowkit {

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

CharClass empty_class(const RingPtr& r, int cutoff) {
  return CharClass{r, std::vector<Element>(static_cast<std::size_t>(cutoff) + 1, r->zero())};
}

int clamp_cutoff(const RingPtr& r, int cutoff) { return std::min(cutoff, r->top_degree()); }

// Power series sum_n coef[n] L^n, split by degree of L.
CharClass series(const Element& L, const std::vector<Rational>& coef, int cutoff) {
  const RingPtr& r = L.ring();
  if (!L.is_zero() && (!L.is_homogeneous() || L.degree() != 1)) {
    throw DomainError("line class " + L.str() + " is not of degree 1");
  }
  CharClass out = empty_class(r, cutoff);
  Element power = r->one();
  for (int n = 0; n <= cutoff && n < static_cast<int>(coef.size()); ++n) {
    out.parts[static_cast<std::size_t>(n)] = power * coef[static_cast<std::size_t>(n)];
    power = power * L;
  }
  return out;
}

}  // namespace

Element CharClass::total() const {
  Element s = ring->zero();
  for (const auto& p : parts) s += p;
  return s;
}

Element CharClass::part(int d) const {
  if (d < 0 || d >= static_cast<int>(parts.size())) return ring->zero();
  return parts[static_cast<std::size_t>(d)];
}

CharClass multiply(const CharClass& a, const CharClass& b, int cutoff) {
  if (a.ring != b.ring) throw DomainError("characteristic classes over different rings");
  CharClass out = empty_class(a.ring, cutoff);
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    for (std::size_t j = 0; j < b.parts.size() && i + j <= static_cast<std::size_t>(cutoff); ++j) {
      out.parts[i + j] += a.parts[i] * b.parts[j];
    }
  }
  return out;
}

CharClass add(const CharClass& a, const CharClass& b) {
  if (a.ring != b.ring) throw DomainError("characteristic classes over different rings");
  CharClass out = a.parts.size() >= b.parts.size() ? a : b;
  const CharClass& other = a.parts.size() >= b.parts.size() ? b : a;
  for (std::size_t i = 0; i < other.parts.size(); ++i) out.parts[i] += other.parts[i];
  return out;
}

CharClass chern_to_character(const RingPtr& r, const Rational& rank, const std::vector<Element>& chern,
                             int cutoff) {
  cutoff = clamp_cutoff(r, cutoff);
  auto e = [&](int i) -> Element {
    if (i == 0) return r->one();
    if (i <= static_cast<int>(chern.size())) {
      const Element& c = chern[static_cast<std::size_t>(i - 1)];
      return c.is_zero() ? r->zero() : c;
    }
    return r->zero();
  };
  // Newton: p_k = sum_{i=1}^{k-1} (-1)^(i-1) e_i p_(k-i) + (-1)^(k-1) k e_k,
  // and ch_k = p_k / k!.
  std::vector<Element> p(static_cast<std::size_t>(cutoff) + 1, r->zero());
  CharClass out = empty_class(r, cutoff);
  out.parts[0] = r->scalar(rank);
  for (int k = 1; k <= cutoff; ++k) {
    Element pk = e(k) * Rational(k % 2 == 1 ? k : -k);
    for (int i = 1; i < k; ++i) pk += e(i) * p[static_cast<std::size_t>(k - i)] * Rational(i % 2 == 1 ? 1 : -1);
    p[static_cast<std::size_t>(k)] = pk;
    out.parts[static_cast<std::size_t>(k)] = pk * (1 / factorial(k));
  }
  return out;
}

ChernData character_to_chern(const CharClass& ch, int cutoff) {
  const RingPtr& r = ch.ring;
  cutoff = clamp_cutoff(r, cutoff);
  const Element c0 = ch.part(0);
  if (!c0.is_zero() && c0.degree() != 0) throw DomainError("degree-0 part of a character is not a number");
  ChernData out{c0.constant(), {}};
  // e_k = (1/k) sum_{i=1}^k (-1)^(i-1) e_(k-i) p_i with p_i = i! ch_i.
  std::vector<Element> e{r->one()};
  for (int k = 1; k <= cutoff; ++k) {
    Element ek = r->zero();
    for (int i = 1; i <= k; ++i) {
      const Element pi = ch.part(i) * factorial(i);
      ek += e[static_cast<std::size_t>(k - i)] * pi * Rational(i % 2 == 1 ? 1 : -1);
    }
    e.push_back(ek * Rational(1, k));
  }
  out.chern.assign(e.begin() + 1, e.end());
  return out;
}

CharClass exponential(const Element& line, int cutoff) {
  cutoff = clamp_cutoff(line.ring(), cutoff);
  std::vector<Rational> coef;
  for (int n = 0; n <= cutoff; ++n) coef.push_back(1 / factorial(n));
  return series(line, coef, cutoff);
}

CharClass todd_inverse_canonical(const Element& K, int cutoff) {
  cutoff = clamp_cutoff(K.ring(), cutoff);
  // Td of a line bundle with c_1 = x is the reciprocal of
  // (1 - e^-x)/x = sum_n (-1)^n x^n / (n+1)!; evaluate at x = -K.
  std::vector<Rational> a;
  for (int n = 0; n <= cutoff; ++n) a.push_back(Rational(n % 2 == 0 ? 1 : -1) / factorial(n + 1));
  std::vector<Rational> inv{1};
  for (int n = 1; n <= cutoff; ++n) {
    Rational s = 0;
    for (int k = 1; k <= n; ++k) s += a[static_cast<std::size_t>(k)] * inv[static_cast<std::size_t>(n - k)];
    inv.push_back(-s);
  }
  for (int n = 1; n <= cutoff; n += 2) inv[static_cast<std::size_t>(n)] = -inv[static_cast<std::size_t>(n)];
  return series(K, inv, cutoff);
}

Fibration make_fibration(std::string name, RingMorphism pullback, LinearMap pushforward, Element K,
                         std::optional<Element> c1, std::optional<Element> c2) {
  if (pushforward.shift() != -1) {
    throw DomainError("fibration " + name + ": pushforward shift is " + std::to_string(pushforward.shift()) +
                      ", a family of curves needs -1");
  }
  if (pullback.source() != pushforward.target() || pullback.target() != pushforward.source()) {
    throw DomainError("fibration " + name + ": pullback and pushforward do not form a pair");
  }
  const RingPtr total = pullback.target();
  auto check = [&](const Element& x, int deg, const char* what) {
    if (x.is_zero()) return total->zero();
    if (x.ring() != total || !x.is_homogeneous() || x.degree() != deg) {
      throw DomainError("fibration " + name + ": " + what + " = " + x.str() + " is not a degree-" +
                        std::to_string(deg) + " class on " + total->name());
    }
    return x;
  };
  Fibration f{std::move(name), total, pullback.source(), std::move(pullback), std::move(pushforward),
              check(K, 1, "K"), std::nullopt, std::nullopt, 2};
  if (c1) f.c1 = check(*c1, 1, "c1");
  if (c2) f.c2 = check(*c2, 2, "c2");
  return f;
}

CharClass grr_push(const Fibration& f, const CharClass& ch) {
  if (ch.ring != f.total) throw DomainError("fibration " + f.name + ": character is not on " + f.total->name());
  const int top = f.total->top_degree();
  const CharClass prod = multiply(ch, todd_inverse_canonical(f.K, top), top);
  CharClass out = empty_class(f.base, f.base->top_degree());
  for (int j = 0; j <= f.base->top_degree(); ++j) {
    out.parts[static_cast<std::size_t>(j)] = f.pushforward.apply(prod.part(j + 1));
  }
  return out;
}

Element kappa(const Fibration& f, int a, int b, int c) {
  if (a < -1 || b < 0 || c < 0) throw DomainError("kappa indices out of range");
  if ((b > 0 && !f.c1) || (c > 0 && !f.c2)) {
    throw DomainError("fibration " + f.name + " carries no bundle classes for kappa");
  }
  Element x = f.K.pow(a + 1);
  if (b > 0) x = x * f.c1->pow(b);
  if (c > 0) x = x * f.c2->pow(c);
  return f.pushforward.apply(x);
}

CharClass bundle_character(const Fibration& f, int cutoff) {
  if (!f.c1 || !f.c2) throw DomainError("fibration " + f.name + " carries no bundle classes");
  return chern_to_character(f.total, f.bundle_rank, {*f.c1, *f.c2}, cutoff);
}

Element lambda_class(const Fibration& f, int m, int n, int l) {
  if (l != 0 && l != 1) throw DomainError("lambda classes are only defined for l = 0 or 1");
  if (n != 0 && !f.c1) throw DomainError("fibration " + f.name + " carries no bundle classes");
  const int top = f.total->top_degree();
  Element line = f.K * Rational(m);
  if (n != 0) line += *f.c1 * Rational(n);
  CharClass ch = exponential(line, top);
  if (l == 1) ch = multiply(ch, bundle_character(f, top), top);
  return grr_push(f, ch).part(1);
}

std::string kappa_symbol(int a, int b, int c) {
  auto idx = [](int v) { return v < 0 ? "m" + std::to_string(-v) : std::to_string(v); };
  return "k_" + idx(a) + "_" + idx(b) + "_" + idx(c);
}

TautRing formal_taut_ring(const std::string& name, int cutoff, int genus, int degree,
                          bool k_squared_vanishes) {
  if (cutoff < 1 || cutoff > 4) throw DomainError("tautological cutoff must be between 1 and 4");
  struct Index {
    int a, b, c;
  };
  std::vector<Index> symbols;
  for (int deg = 1; deg <= cutoff; ++deg) {
    // a >= -1 lets 2c reach deg + 1.
    for (int c = (deg + 1) / 2; c >= 0; --c) {
      for (int a = -1; a <= deg - 2 * c; ++a) {
        const int b = deg - 2 * c - a;
        if (k_squared_vanishes && a >= 1) continue;
        symbols.push_back({a, b, c});
      }
    }
  }

  std::vector<Generator> base_gens;
  for (const auto& s : symbols) base_gens.push_back({kappa_symbol(s.a, s.b, s.c), s.a + s.b + 2 * s.c});
  RingPtr base = PresentedRing::make(name + "_base", base_gens, {}, cutoff);

  std::vector<Generator> total_gens{{"K", 1}, {"c1", 1}, {"c2", 2}};
  for (const auto& g : base_gens) total_gens.push_back(g);
  std::vector<Poly> rels;
  if (k_squared_vanishes) {
    Exponents e(total_gens.size(), 0);
    e[0] = 2;
    rels.push_back(Poly::monomial(e));
  }
  // The base is truncated at the cutoff, so its products above it vanish
  // upstairs too.
  for (const auto& m : enumerate_monomials(base_gens, cutoff + 1)) {
    Exponents e(total_gens.size(), 0);
    std::copy(m.begin(), m.end(), e.begin() + 3);
    rels.push_back(Poly::monomial(e));
  }
  RingPtr total = PresentedRing::make(name + "_total", total_gens, std::move(rels), cutoff + 1);

  std::vector<Element> images;
  for (const auto& g : base_gens) images.push_back(total->gen(g.name));
  RingMorphism pull = RingMorphism::make(name + "_pull", base, total, std::move(images));

  auto value = [&](int a, int b, int c) -> Element {
    const int deg = a + b + 2 * c;
    if (deg < 0) return base->zero();
    if (deg == 0) {
      if (a == 0 && b == 0 && c == 0) return base->scalar(2 * genus - 2);
      if (a == -1 && b == 1 && c == 0) return base->scalar(degree);
      return base->zero();
    }
    return base->gen(kappa_symbol(a, b, c));
  };
  std::vector<Declaration> decls;
  const Element K = total->gen("K");
  const Element c1 = total->gen("c1");
  const Element c2 = total->gen("c2");
  for (int deg = 0; deg <= cutoff + 1; ++deg) {
    for (int c = deg / 2; c >= 0; --c) {
      for (int k = 0; k <= deg - 2 * c; ++k) {
        const int b = deg - 2 * c - k;
        const int a = k - 1;
        if (k_squared_vanishes && k >= 2) continue;
        decls.push_back({K.pow(k) * c1.pow(b) * c2.pow(c), value(a, b, c)});
      }
    }
  }
  LinearMap push = LinearMap::from_declarations(name + "_push", total, base, -1, std::move(decls), &pull);
  Fibration f = make_fibration(name, std::move(pull), std::move(push), K, c1, c2);
  return TautRing{base, std::move(f)};
}

}  // namespace chowkit
