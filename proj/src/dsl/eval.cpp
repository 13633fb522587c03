// SPDX-License-Identifier: Apache-2.0
#include <map>
#include <set>
#include <sstream>

#include "chowkit/constructions.hpp"
#include "chowkit/error.hpp"
#include "chowkit/grr.hpp"
#include "chowkit/scene.hpp"

namespace chowkit::scene {

namespace {

struct BlowupRecord {
  BlowupModel model;
  BlowupPresentation pres;
};

using Value = std::variant<Rational, Element>;

[[noreturn]] void bad(const Expr& e, const std::string& msg) {
  throw DomainError(e.loc.str() + ": " + msg);
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

struct Environment::Impl {
  std::map<std::string, RingPtr> rings;
  std::map<std::string, RingMorphism> morphisms;
  std::map<std::string, LinearMap> maps;
  std::map<std::string, Element> classes;
  std::map<std::string, ProjectiveBundle> bundles;
  std::map<std::string, BlowupRecord> blowups;
  std::map<std::string, Fibration> fibrations;
  // Every name in any of the tables above; rings double as bundle and
  // blowup names, so those two tables are not counted separately.
  std::set<std::string> names;

  void claim(const std::string& name, const Location& loc) {
    if (!names.insert(name).second) throw DomainError(loc.str() + ": " + name + " is already declared");
  }

  RingPtr ring(const std::string& name, const Location& loc) const {
    auto it = rings.find(name);
    if (it == rings.end()) throw DomainError(loc.str() + ": unknown ring " + name);
    return it->second;
  }
  const RingMorphism& morphism(const std::string& name, const Location& loc) const {
    auto it = morphisms.find(name);
    if (it == morphisms.end()) throw DomainError(loc.str() + ": unknown pullback " + name);
    return it->second;
  }
  const LinearMap& linear(const std::string& name, const Location& loc) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw DomainError(loc.str() + ": unknown pushforward " + name);
    return it->second;
  }
  const BlowupRecord& blowup(const std::string& name, const Location& loc) const {
    auto it = blowups.find(name);
    if (it == blowups.end()) throw DomainError(loc.str() + ": unknown blowup " + name);
    return it->second;
  }
  const Fibration& fibration(const std::string& name, const Location& loc) const {
    auto it = fibrations.find(name);
    if (it == fibrations.end()) throw DomainError(loc.str() + ": unknown fibration " + name);
    return it->second;
  }

  // ------------------------------------------------------- polynomial level

  Poly poly(const Expr& e, const std::vector<Generator>& gens) const {
    const std::size_t n = gens.size();
    switch (e.kind) {
      case Expr::Kind::Number:
        return Poly::constant(n, e.value);
      case Expr::Kind::Name:
        for (std::size_t i = 0; i < n; ++i) {
          if (gens[i].name == e.name) return Poly::generator(n, i);
        }
        bad(e, "unknown generator " + e.name);
      case Expr::Kind::Add:
        return poly(*e.args[0], gens) + poly(*e.args[1], gens);
      case Expr::Kind::Sub:
        return poly(*e.args[0], gens) - poly(*e.args[1], gens);
      case Expr::Kind::Mul:
        return poly(*e.args[0], gens) * poly(*e.args[1], gens);
      case Expr::Kind::Neg:
        return -poly(*e.args[0], gens);
      case Expr::Kind::Div: {
        const Poly d = poly(*e.args[1], gens);
        Exponents zero(n, 0);
        if (d.terms().size() != 1 || d.terms().begin()->first != zero) {
          bad(e, "division is only by a nonzero number");
        }
        return poly(*e.args[0], gens) * (1 / d.terms().begin()->second);
      }
      case Expr::Kind::Pow: {
        const Poly b = poly(*e.args[0], gens);
        Poly out = Poly::constant(n, 1);
        for (int i = 0; i < e.exponent; ++i) out = out * b;
        return out;
      }
      case Expr::Kind::Call:
        bad(e, "function calls are not allowed in relations");
    }
    bad(e, "malformed expression");
  }

  // ---------------------------------------------------------- element level

  static Element lift(const Value& v, const RingPtr& ctx, const Expr& e) {
    if (const auto* x = std::get_if<Element>(&v)) return *x;
    if (!ctx) bad(e, "a number is used where a class is needed and no ring is in scope");
    return ctx->scalar(std::get<Rational>(v));
  }

  static Rational number(const Value& v, const Expr& e) {
    if (const auto* r = std::get_if<Rational>(&v)) return *r;
    const Element& x = std::get<Element>(v);
    if (x.is_zero()) return 0;
    if (x.degree() != 0) bad(e, "expected a number, got " + x.str());
    return x.constant();
  }

  static int integer(const Value& v, const Expr& e) {
    const Rational r = number(v, e);
    if (r.get_den() != 1 || !r.get_num().fits_sint_p()) bad(e, "expected an integer, got " + r.get_str());
    return static_cast<int>(r.get_num().get_si());
  }

  static void same_ring(const Element& a, const Element& b, const Expr& e) {
    if (a.ring() != b.ring()) {
      bad(e, "cannot combine a class of " + a.ring()->name() + " with a class of " + b.ring()->name());
    }
  }

  static const std::string& arg_name(const Expr& call, std::size_t i, const char* what) {
    const Expr& a = *call.args[i];
    if (a.kind != Expr::Kind::Name) bad(a, std::string("expected the name of a ") + what);
    return a.name;
  }

  static void arity(const Expr& call, std::size_t lo, std::size_t hi, const char* usage) {
    if (call.args.size() < lo || call.args.size() > hi) {
      bad(call, std::string("wrong number of arguments; usage: ") + usage);
    }
  }

  Value value(const Expr& e, const RingPtr& ctx) const {
    switch (e.kind) {
      case Expr::Kind::Number:
        return e.value;
      case Expr::Kind::Name: {
        if (ctx && ctx->has_generator(e.name)) return ctx->gen(e.name);
        auto it = classes.find(e.name);
        if (it != classes.end()) {
          if (ctx && it->second.ring() != ctx) {
            bad(e, "class " + e.name + " lives in " + it->second.ring()->name() + ", not " + ctx->name());
          }
          return it->second;
        }
        bad(e, "unbound name " + e.name + (ctx ? " in " + ctx->name() : std::string()));
      }
      case Expr::Kind::Add:
      case Expr::Kind::Sub: {
        const Value a = value(*e.args[0], ctx);
        const Value b = value(*e.args[1], ctx);
        const Rational sign = e.kind == Expr::Kind::Add ? 1 : -1;
        if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b)) {
          return std::get<Rational>(a) + sign * std::get<Rational>(b);
        }
        // A bare number joins the ring of the other operand.
        const RingPtr home = std::holds_alternative<Element>(a) ? std::get<Element>(a).ring()
                                                                : std::get<Element>(b).ring();
        const Element x = lift(a, home, e);
        const Element y = lift(b, home, e);
        same_ring(x, y, e);
        return e.kind == Expr::Kind::Add ? x + y : x - y;
      }
      case Expr::Kind::Mul: {
        const Value a = value(*e.args[0], ctx);
        const Value b = value(*e.args[1], ctx);
        if (const auto* r = std::get_if<Rational>(&a)) {
          if (const auto* s = std::get_if<Rational>(&b)) return Rational(*r * *s);
          return std::get<Element>(b) * *r;
        }
        if (const auto* s = std::get_if<Rational>(&b)) return std::get<Element>(a) * *s;
        same_ring(std::get<Element>(a), std::get<Element>(b), e);
        return std::get<Element>(a) * std::get<Element>(b);
      }
      case Expr::Kind::Div: {
        const Value a = value(*e.args[0], ctx);
        const Rational d = number(value(*e.args[1], ctx), *e.args[1]);
        if (d == 0) bad(e, "division by zero");
        if (const auto* r = std::get_if<Rational>(&a)) return Rational(*r / d);
        return std::get<Element>(a) * Rational(1 / d);
      }
      case Expr::Kind::Neg: {
        const Value a = value(*e.args[0], ctx);
        if (const auto* r = std::get_if<Rational>(&a)) return Rational(-*r);
        return -std::get<Element>(a);
      }
      case Expr::Kind::Pow: {
        const Value a = value(*e.args[0], ctx);
        if (const auto* r = std::get_if<Rational>(&a)) {
          Rational out = 1;
          for (int i = 0; i < e.exponent; ++i) out *= *r;
          return out;
        }
        return std::get<Element>(a).pow(e.exponent);
      }
      case Expr::Kind::Call:
        return call(e, ctx);
    }
    bad(e, "malformed expression");
  }

  Element element(const Expr& e, const RingPtr& ctx) const {
    Element x = lift(value(e, ctx), ctx, e);
    if (ctx && x.ring() != ctx) {
      bad(e, print_expr(e) + " lies in " + x.ring()->name() + ", expected " + ctx->name());
    }
    return x;
  }

  Value call(const Expr& e, const RingPtr& ctx) const {
    const std::string& f = e.name;
    auto arg = [&](std::size_t i, const RingPtr& r) { return element(*e.args[i], r); };
    auto int_arg = [&](std::size_t i) { return integer(value(*e.args[i], ctx), *e.args[i]); };

    if (f == "push") {
      arity(e, 2, 2, "push(PUSHFORWARD, x)");
      const LinearMap& m = linear(arg_name(e, 0, "pushforward"), e.loc);
      return m.apply(arg(1, m.source()));
    }
    if (f == "pull") {
      arity(e, 2, 2, "pull(PULLBACK, x)");
      const RingMorphism& m = morphism(arg_name(e, 0, "pullback"), e.loc);
      return m.apply(arg(1, m.source()));
    }
    if (f == "bpush") {
      arity(e, 2, 2, "bpush(PBUNDLE, k)");
      const std::string& n = arg_name(e, 0, "projective bundle");
      auto it = bundles.find(n);
      if (it == bundles.end()) bad(e, "unknown projective bundle " + n);
      return bundle_pushforward_values(it->second, int_arg(1));
    }
    if (f == "exc") {
      arity(e, 2, 3, "exc(BLOWUP, x[, r])");
      const BlowupRecord& b = blowup(arg_name(e, 0, "blowup"), e.loc);
      const int r = e.args.size() == 3 ? int_arg(2) : 0;
      return b.pres.to_element(b.model, b.model.exceptional(arg(1, b.model.center()), r));
    }
    if (f == "transform") {
      arity(e, 2, 3, "transform(BLOWUP, v[, v_meet_center])");
      const BlowupRecord& b = blowup(arg_name(e, 0, "blowup"), e.loc);
      const Element v = arg(1, b.model.ambient());
      BlowupModel::Point p =
          e.args.size() == 3
              ? strict_transform(b.model, v, arg(2, b.model.center()), TransformCase::ExcessOne)
              : strict_transform(b.model, v, std::nullopt, TransformCase::ExpectedDimension);
      return b.pres.to_element(b.model, p);
    }
    if (f == "kappa") {
      arity(e, 4, 4, "kappa(FIBRATION, a, b, c)");
      return kappa(fibration(arg_name(e, 0, "fibration"), e.loc), int_arg(1), int_arg(2), int_arg(3));
    }
    if (f == "lambda") {
      arity(e, 4, 4, "lambda(FIBRATION, m, n, l)");
      return lambda_class(fibration(arg_name(e, 0, "fibration"), e.loc), int_arg(1), int_arg(2),
                          int_arg(3));
    }
    if (f == "grr") {
      arity(e, 2, 2, "grr(FIBRATION, ch)");
      const Fibration& fib = fibration(arg_name(e, 0, "fibration"), e.loc);
      const Element x = arg(1, fib.total);
      CharClass ch{fib.total, {}};
      for (int d = 0; d <= fib.total->top_degree(); ++d) ch.parts.push_back(x.part(d));
      return grr_push(fib, ch).total();
    }
    if (!ctx) bad(e, f + "(...) needs a ring in scope");
    const int cutoff = ctx->top_degree();
    if (f == "ch") {
      if (e.args.empty()) bad(e, "usage: ch(rank, c1, c2, ...)");
      const Rational rank = number(value(*e.args[0], ctx), *e.args[0]);
      std::vector<Element> chern;
      for (std::size_t i = 1; i < e.args.size(); ++i) chern.push_back(arg(i, ctx));
      return chern_to_character(ctx, rank, chern, cutoff).total();
    }
    if (f == "chern") {
      arity(e, 2, 2, "chern(k, ch)");
      const int k = int_arg(0);
      const Element x = arg(1, ctx);
      CharClass ch{ctx, {}};
      for (int d = 0; d <= cutoff; ++d) ch.parts.push_back(x.part(d));
      const ChernData data = character_to_chern(ch, cutoff);
      if (k == 0) return ctx->one();
      if (k < 0 || k > cutoff) return ctx->zero();
      return data.chern[static_cast<std::size_t>(k - 1)];
    }
    if (f == "td") {
      arity(e, 1, 1, "td(K)");
      return todd_inverse_canonical(arg(0, ctx), cutoff).total();
    }
    if (f == "exp") {
      arity(e, 1, 1, "exp(x)");
      return exponential(arg(0, ctx), cutoff).total();
    }
    if (f == "part") {
      arity(e, 2, 2, "part(k, x)");
      return arg(1, ctx).part(int_arg(0));
    }
    bad(e, "unknown function " + f);
  }
};

Environment::Environment() : impl_(std::make_unique<Impl>()) {}
Environment::~Environment() = default;
Environment::Environment(Environment&&) noexcept = default;
Environment& Environment::operator=(Environment&&) noexcept = default;

bool Environment::has_ring(const std::string& name) const { return impl_->rings.count(name) > 0; }

RingPtr Environment::ring(const std::string& name) const {
  auto it = impl_->rings.find(name);
  if (it == impl_->rings.end()) throw DomainError("unknown ring " + name);
  return it->second;
}

std::vector<std::string> Environment::ring_names() const {
  std::vector<std::string> out;
  for (const auto& [n, r] : impl_->rings) out.push_back(n);
  return out;
}

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw DomainError(std::string("unknown ") + what + " " + name);
  return it->second;
}

}  // namespace

const RingMorphism& Environment::pullback(const std::string& name) const {
  return lookup(impl_->morphisms, name, "pullback");
}
const LinearMap& Environment::pushforward(const std::string& name) const {
  return lookup(impl_->maps, name, "pushforward");
}
const Element& Environment::named_class(const std::string& name) const {
  return lookup(impl_->classes, name, "class");
}
const ProjectiveBundle& Environment::bundle(const std::string& name) const {
  return lookup(impl_->bundles, name, "bundle");
}
const BlowupModel& Environment::blowup(const std::string& name) const {
  return lookup(impl_->blowups, name, "blowup").model;
}
const BlowupPresentation& Environment::blowup_presentation(const std::string& name) const {
  return lookup(impl_->blowups, name, "blowup").pres;
}
const Fibration& Environment::fibration(const std::string& name) const {
  return lookup(impl_->fibrations, name, "fibration");
}

Element Environment::evaluate(const std::string& ring_name, const std::string& text) const {
  const RingPtr r = ring(ring_name);
  return impl_->element(*parse_expression(text), r);
}

namespace {

class Runner {
 public:
  Runner(Environment::Impl& env, Report& report) : env_(env), report_(report) {}

  void run(const Item& item) {
    if (const auto* a = std::get_if<AssertItem>(&item.body)) {
      check(*a, item);
      return;
    }
    try {
      std::visit([&](const auto& body) { declare(body, item.loc); }, item.body);
    } catch (const std::exception& ex) {
      Entry e;
      e.label = "declaration: " + first_words(print_item(item));
      e.status = Status::Error;
      e.witness = ex.what();
      e.location = item.loc;
      report_.entries.push_back(std::move(e));
    }
  }

 private:
  static std::string first_words(const std::string& s) {
    const auto cut = s.find_first_of("{(=:\n");
    std::string head = s.substr(0, cut);
    while (!head.empty() && head.back() == ' ') head.pop_back();
    return head;
  }

  // ------------------------------------------------------------ declarations

  void declare(const AssertItem&, const Location&) {}

  void declare(const RingItem& r, const Location& loc) {
    env_.claim(r.name, loc);
    std::vector<Generator> gens;
    for (const auto& g : r.gens) gens.push_back({g.name, g.degree});
    std::vector<Poly> rels;
    for (const auto& e : r.rels) rels.push_back(env_.poly(*e, gens));
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if (term_degrees(rels[i], gens).size() > 1) {
        throw ConstructionError(r.rels[i]->loc.str() + ": relation " + print_expr(*r.rels[i]) +
                                " is not homogeneous");
      }
    }
    env_.rings[r.name] = PresentedRing::make(r.name, std::move(gens), std::move(rels), r.top);
  }

  void declare(const ClassItem& c, const Location& loc) {
    const RingPtr r = env_.ring(c.ring, loc);
    Element x = env_.element(*c.value, r);
    env_.claim(c.name, loc);
    env_.classes.emplace(c.name, std::move(x));
  }

  void declare(const QuotientItem& q, const Location& loc) {
    const RingPtr r = env_.ring(q.ring, loc);
    std::vector<Element> classes;
    for (const auto& e : q.classes) classes.push_back(env_.element(*e, r));
    env_.claim(q.name, loc);
    env_.rings[q.name] = quotient_by_classes(r, classes, q.name);
  }

  void declare(const AdjoinItem& a, const Location& loc) {
    const RingPtr r = env_.ring(a.ring, loc);
    std::vector<Generator> gens = r->generators();
    gens.push_back({a.gen.name, a.gen.degree});
    std::vector<Poly> rels;
    for (const auto& e : a.rels) rels.push_back(env_.poly(*e, gens));
    env_.claim(a.name, loc);
    env_.rings[a.name] = adjoin_class(r, a.name, {a.gen.name, a.gen.degree}, rels);
  }

  void declare(const PBundleItem& p, const Location& loc) {
    const RingPtr base = env_.ring(p.base, loc);
    BundleData data{p.rank, {}};
    for (const auto& e : p.chern) data.chern.push_back(env_.element(*e, base));
    for (const auto& n : {p.name, p.name + "_pull", p.name + "_push"}) env_.claim(n, loc);
    ProjectiveBundle b = projective_bundle(base, data, p.hyperplane, p.name);
    env_.rings[p.name] = b.total;
    env_.morphisms.emplace(p.name + "_pull", b.pullback);
    env_.maps.emplace(p.name + "_push", b.pushforward);
    env_.bundles.emplace(p.name, std::move(b));
  }

  void declare(const BlowupItem& b, const Location& loc) {
    const RingPtr y = env_.ring(b.ambient, loc);
    const RingPtr x = env_.ring(b.center, loc);
    const RingMorphism& restrict = env_.morphism(b.pullback, loc);
    const LinearMap& include = env_.linear(b.pushforward, loc);
    BundleData normal{static_cast<int>(b.normal.size()), {}};
    for (const auto& e : b.normal) normal.chern.push_back(env_.element(*e, x));
    std::map<std::string, std::string> names(b.names.begin(), b.names.end());
    for (const auto& n : {b.name, b.name + "_fpull", b.name + "_fpush"}) env_.claim(n, loc);
    BlowupModel model(b.name, y, x, restrict, include, normal, b.exceptional);
    BlowupPresentation pres = emit_presentation(model, b.name, names);
    env_.rings[b.name] = pres.ring;
    env_.morphisms.emplace(b.name + "_fpull", pres.pullback);
    env_.maps.emplace(b.name + "_fpush", pres.pushforward);
    env_.blowups.emplace(b.name, BlowupRecord{std::move(model), std::move(pres)});
  }

  void declare(const FiberProdItem& f, const Location& loc) {
    const RingPtr a = env_.ring(f.a, loc);
    const RingPtr b = env_.ring(f.b, loc);
    const RingPtr s = env_.ring(f.base, loc);
    const RingMorphism& pa = env_.morphism(f.pa, loc);
    const RingMorphism& pb = env_.morphism(f.pb, loc);
    if (pa.source() != s || pb.source() != s) {
      throw DomainError(loc.str() + ": " + f.pa + " and " + f.pb + " must start from " + f.base);
    }
    std::vector<std::string> claimed{f.name, f.name + "_qa", f.name + "_qb"};
    if (f.pushforward) claimed.push_back(f.name + "_push");
    for (const auto& n : claimed) env_.claim(n, loc);
    FiberProduct fp = fiber_product_over_base(f.name, a, b, pa, pb);
    if (f.pushforward) {
      env_.maps.emplace(f.name + "_push",
                        base_change_pushforward(f.name + "_push", fp, pb, env_.linear(*f.pushforward, loc)));
    }
    env_.rings[f.name] = fp.ring;
    env_.morphisms.emplace(f.name + "_qa", fp.qa);
    env_.morphisms.emplace(f.name + "_qb", fp.qb);
  }

  void declare(const PullbackItem& p, const Location& loc) {
    const RingPtr src = env_.ring(p.source, loc);
    const RingPtr tgt = env_.ring(p.target, loc);
    std::map<std::string, Element> given;
    for (const auto& [g, e] : p.images) {
      if (!src->has_generator(g)) throw DomainError(e->loc.str() + ": " + g + " is not a generator of " + src->name());
      if (!given.emplace(g, env_.element(*e, tgt)).second) {
        throw DomainError(e->loc.str() + ": image of " + g + " given twice");
      }
    }
    std::vector<Element> images;
    for (const auto& g : src->generators()) {
      auto it = given.find(g.name);
      if (it != given.end()) {
        images.push_back(it->second);
      } else if (tgt->has_generator(g.name)) {
        images.push_back(tgt->gen(g.name));
      } else {
        throw DomainError(loc.str() + ": no image for " + g.name + " and " + tgt->name() +
                          " has no generator of that name");
      }
    }
    env_.claim(p.name, loc);
    env_.morphisms.emplace(p.name, RingMorphism::make(p.name, src, tgt, std::move(images)));
  }

  void declare(const PushforwardItem& p, const Location& loc) {
    const RingPtr src = env_.ring(p.source, loc);
    const RingPtr tgt = env_.ring(p.target, loc);
    const RingMorphism* over = nullptr;
    if (p.over) {
      over = &env_.morphism(*p.over, loc);
      if (over->source() != tgt || over->target() != src) {
        throw DomainError(loc.str() + ": " + *p.over + " must go from " + tgt->name() + " to " + src->name());
      }
    }
    std::vector<Declaration> decls;
    if (p.extends) {
      const LinearMap& old = env_.linear(*p.extends, loc);
      if (old.shift() != p.shift) throw DomainError(loc.str() + ": " + *p.extends + " has a different shift");
      auto move = [](const Element& x, const RingPtr& to) {
        if (x.is_zero()) return to->zero();
        return to->reduce(transport_poly(to_poly(x), x.ring()->generators(), to->generators()));
      };
      for (const auto& d : old.basis_declarations()) decls.push_back({move(d.x, src), move(d.y, tgt)});
    }
    for (const auto& [x, y] : p.values) decls.push_back({env_.element(*x, src), env_.element(*y, tgt)});
    env_.claim(p.name, loc);
    env_.maps.emplace(p.name, LinearMap::from_declarations(p.name, src, tgt, p.shift, std::move(decls), over));
  }

  void declare(const FibrationItem& f, const Location& loc) {
    const RingPtr total = env_.ring(f.total, loc);
    const RingPtr base = env_.ring(f.base, loc);
    const RingMorphism& pull = env_.morphism(f.pullback, loc);
    const LinearMap& push = env_.linear(f.pushforward, loc);
    if (pull.source() != base || pull.target() != total || push.source() != total || push.target() != base) {
      throw DomainError(loc.str() + ": " + f.pullback + " and " + f.pushforward + " must connect " +
                        f.base + " and " + f.total);
    }
    Element K = env_.element(*f.K, total);
    std::optional<Element> c1, c2;
    if (f.c1) {
      c1 = env_.element(*f.c1, total);
      c2 = env_.element(*f.c2, total);
    }
    env_.claim(f.name, loc);
    env_.fibrations.emplace(f.name, make_fibration(f.name, pull, push, K, c1, c2));
  }

  void declare(const TautItem& t, const Location& loc) {
    const std::vector<std::string> claimed{t.name, t.name + "_base", t.name + "_total", t.name + "_pull",
                                           t.name + "_push"};
    for (const auto& n : claimed) {
      if (env_.names.count(n)) throw DomainError(loc.str() + ": " + n + " is already declared");
    }
    TautRing tr = formal_taut_ring(t.name, t.cutoff, t.genus, t.degree, t.ksquarezero);
    for (const auto& n : claimed) env_.claim(n, loc);
    env_.rings[t.name + "_base"] = tr.base;
    env_.rings[t.name + "_total"] = tr.fibration.total;
    env_.morphisms.emplace(t.name + "_pull", tr.fibration.pullback);
    env_.maps.emplace(t.name + "_push", tr.fibration.pushforward);
    env_.fibrations.emplace(t.name, std::move(tr.fibration));
  }

  // -------------------------------------------------------------- assertions

  struct Outcome {
    bool ok = true;
    std::string witness;
  };

  RingPtr scope(const AssertItem& a, const Location& loc) const {
    if (!a.ring) throw DomainError(loc.str() + ": assert " + a.kind + " needs 'in RING'");
    return env_.ring(*a.ring, loc);
  }

  Outcome evaluate(const AssertItem& a, const Location& loc) const {
    if (a.kind == "eq") {
      const RingPtr r = scope(a, loc);
      const Element d = env_.element(*a.exprs[0], r) - env_.element(*a.exprs[1], r);
      if (d.is_zero()) return {};
      return {false, "lhs - rhs = " + d.str()};
    }
    if (a.kind == "zero") {
      const RingPtr r = scope(a, loc);
      const Element x = env_.element(*a.exprs[0], r);
      if (x.is_zero()) return {};
      return {false, x.str()};
    }
    if (a.kind == "dim") {
      if (a.ints[0] < 0) throw DomainError(loc.str() + ": negative degree");
      const auto d = static_cast<std::size_t>(a.ints[0]);
      std::size_t got = 0;
      if (a.dim_mode.empty()) {
        const RingPtr r = scope(a, loc);
        got = a.ints[0] <= r->top_degree() ? r->dim(static_cast<int>(d)) : 0;
      } else {
        if (!a.ring) throw DomainError(loc.str() + ": assert dim " + a.dim_mode + " needs 'in PUSHFORWARD'");
        const LinearMap& m = env_.linear(*a.ring, loc);
        const auto dims = a.dim_mode == "ker" ? kernel_dims(m) : image_dims(m);
        got = d < dims.size() ? dims[d] : 0;
      }
      if (static_cast<long>(got) == a.ints[1]) return {};
      return {false, "dimension " + std::to_string(got)};
    }
    if (a.kind == "hilbert") {
      const RingPtr r = scope(a, loc);
      const auto h = r->hilbert_function();
      std::vector<std::size_t> want;
      for (long v : a.ints) want.push_back(static_cast<std::size_t>(std::max(0L, v)));
      bool ok = h == want;
      for (long v : a.ints) ok = ok && v >= 0;
      if (ok) return {};
      return {false, "hilbert function " + join_sizes(h)};
    }
    if (a.kind == "mapok") return mapok(a.names[0], loc);
    if (a.kind == "projform") {
      const auto v = check_projection_formula(env_.morphism(a.names[0], loc), env_.linear(a.names[1], loc));
      if (v.empty()) return {};
      return {false, std::to_string(v.size()) + " violations; first at " + v[0].where + ": " + v[0].detail};
    }
    if (a.kind == "pushpull") {
      const Rational n = a.scale ? Environment::Impl::number(env_.value(*a.scale, nullptr), *a.scale) : Rational(1);
      if (n == 0) throw DomainError(loc.str() + ": scale must be nonzero");
      const auto v = verify_finite_cover(env_.morphism(a.names[0], loc), env_.linear(a.names[1], loc), n);
      if (v.empty()) return {};
      return {false, std::to_string(v.size()) + " violations; first at " + v[0].where + ": " + v[0].detail};
    }
    if (a.kind == "iso") {
      const RingMorphism& f = env_.morphism(a.names[0], loc);
      const auto hs = f.source()->hilbert_function();
      const auto ht = f.target()->hilbert_function();
      if (hs != ht) return {false, "hilbert functions differ: " + join_sizes(hs) + " vs " + join_sizes(ht)};
      const auto ranks = morphism_ranks(f);
      if (ranks != hs) return {false, "ranks " + join_sizes(ranks) + " vs dimensions " + join_sizes(hs)};
      return {};
    }
    if (a.kind == "basis") return basis(a, loc);
    if (a.kind == "blowupok") return blowupok(a.names[0], loc);
    throw DomainError(loc.str() + ": unknown assertion kind " + a.kind);
  }

  Outcome mapok(const std::string& name, const Location& loc) const {
    if (auto it = env_.morphisms.find(name); it != env_.morphisms.end()) {
      // Recheck every relation directly rather than trusting construction.
      const RingMorphism& f = it->second;
      for (const auto& rel : f.source()->relations()) {
        const Element v = f.apply(rel);
        if (!v.is_zero()) {
          return {false, format_poly(rel, f.source()->generators()) + " maps to " + v.str()};
        }
      }
      return {};
    }
    const LinearMap& m = env_.linear(name, loc);
    const RingPtr& src = m.source();
    for (int d = 0; d <= src->top_degree(); ++d) {
      for (std::size_t i = 0; i < src->dim(d); ++i) {
        if (!m.try_basis(d, i)) return {false, "undeclared on " + src->format_basis_monomial(d, i)};
      }
    }
    return {};
  }

  Outcome basis(const AssertItem& a, const Location& loc) const {
    const RingPtr r = scope(a, loc);
    std::vector<Element> xs;
    for (const auto& e : a.exprs) xs.push_back(env_.element(*e, r));
    if (xs.empty()) return {false, "empty list"};
    int d = -1;
    for (const auto& x : xs) {
      if (x.is_zero()) return {false, "contains zero"};
      if (!x.is_homogeneous()) return {false, x.str() + " is not homogeneous"};
      if (d >= 0 && x.degree() != d) return {false, "mixed degrees"};
      d = x.degree();
    }
    const std::size_t n = r->dim(d);
    std::vector<Vector> rows;
    for (const auto& x : xs) rows.push_back(r->coords(x, d));
    const std::size_t k = rank(Matrix::from_rows(rows));
    if (xs.size() == n && k == n) return {};
    return {false, std::to_string(xs.size()) + " classes of rank " + std::to_string(k) + " in a piece of dimension " +
                       std::to_string(n)};
  }

  Outcome blowupok(const std::string& name, const Location& loc) const {
    const BlowupRecord& b = env_.blowup(name, loc);
    const BlowupModel& m = b.model;
    if (auto v = m.check_product_rules(); !v.empty()) {
      return {false, std::to_string(v.size()) + " product-rule mismatches; first: " + v[0]};
    }
    if (auto v = m.check_round_trip(); !v.empty()) {
      return {false, std::to_string(v.size()) + " round-trip mismatches; first: " + v[0]};
    }
    // The presented ring multiplies like the model.
    const RingPtr& r = b.pres.ring;
    for (int p = 0; p <= r->top_degree(); ++p) {
      for (std::size_t i = 0; i < r->dim(p); ++i) {
        const Element x = r->basis_element(p, i);
        const auto px = b.pres.to_point(m, x);
        for (int q = p; p + q <= r->top_degree(); ++q) {
          for (std::size_t j = 0; j < r->dim(q); ++j) {
            const Element y = r->basis_element(q, j);
            if (!m.equal(b.pres.to_point(m, x * y), m.multiply(px, b.pres.to_point(m, y)))) {
              return {false, "ring and model disagree on " + x.str() + " * " + y.str()};
            }
          }
        }
      }
    }
    // Associativity of the model product on generators.
    const auto& g = b.pres.generator_points;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        for (std::size_t k = 0; k < g.size(); ++k) {
          const auto lhs = m.multiply(m.multiply(g[i], g[j]), g[k]);
          const auto rhs = m.multiply(g[i], m.multiply(g[j], g[k]));
          if (!m.equal(lhs, rhs)) {
            return {false, "model product not associative on generators " + std::to_string(i) + ", " +
                               std::to_string(j) + ", " + std::to_string(k)};
          }
        }
      }
    }
    return {};
  }

  void check(const AssertItem& a, const Item& item) {
    Entry e;
    e.location = item.loc;
    e.expected_fail = a.expect_fail;
    if (a.label) {
      e.label = *a.label;
    } else {
      Item bare = item;
      std::get<AssertItem>(bare.body).expect_fail = false;
      e.label = print_item(bare).substr(7);
    }
    try {
      Outcome o = evaluate(a, item.loc);
      const bool pass = o.ok != a.expect_fail;
      e.status = pass ? Status::Pass : Status::Fail;
      if (!o.ok) {
        e.witness = o.witness;
      } else if (a.expect_fail) {
        e.witness = "expected a failure, but the assertion holds";
      }
    } catch (const std::exception& ex) {
      e.status = Status::Error;
      e.witness = ex.what();
    }
    report_.entries.push_back(std::move(e));
  }

  Environment::Impl& env_;
  Report& report_;
};

}  // namespace

Report eval_scene(const Scene& s, Environment& env) {
  Report report;
  Runner runner(*env.impl_, report);
  for (const auto& item : s.items) runner.run(item);
  return report;
}

Report eval_scene(const Scene& s) {
  Environment env;
  return eval_scene(s, env);
}

}  // namespace chowkit::scene
