// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "chowkit/scene.hpp"

namespace chowkit::scene {

namespace {

// Binding strength: sums 1, products 2, negation 3, powers 4, atoms 5.
int level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string at(const Expr& e, int min_level) {
  std::string s = print_expr(e);
  return level(e) < min_level ? "(" + s + ")" : s;
}

std::string join(const std::vector<ExprPtr>& es, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) out += sep;
    out += print_expr(*es[i]);
  }
  return out;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

struct ItemPrinter {
  std::ostringstream& os;

  void operator()(const RingItem& r) {
    os << "ring " << r.name << " { gens: ";
    for (std::size_t i = 0; i < r.gens.size(); ++i) {
      os << (i ? ", " : "") << r.gens[i].name << ":" << r.gens[i].degree;
    }
    os << "; rels: " << join(r.rels) << "; top: " << r.top << " }";
  }
  void operator()(const ClassItem& c) {
    os << "class " << c.name << " in " << c.ring << " = " << print_expr(*c.value);
  }
  void operator()(const QuotientItem& q) {
    os << "quotient " << q.name << " of " << q.ring << " by (" << join(q.classes) << ")";
  }
  void operator()(const AdjoinItem& a) {
    os << "adjoin " << a.name << " to " << a.ring << " class " << a.gen.name << ":" << a.gen.degree;
    if (!a.rels.empty()) os << " rels (" << join(a.rels) << ")";
  }
  void operator()(const PBundleItem& p) {
    os << "pbundle " << p.name << " over " << p.base << " rank " << p.rank << " chern ("
       << join(p.chern) << ") hyperplane " << p.hyperplane;
  }
  void operator()(const BlowupItem& b) {
    os << "blowup " << b.name << " ambient " << b.ambient << " center " << b.center << " pullback "
       << b.pullback << " pushforward " << b.pushforward << " normal (" << join(b.normal)
       << ") exceptional " << b.exceptional;
    if (!b.names.empty()) {
      os << " names (";
      for (std::size_t i = 0; i < b.names.size(); ++i) {
        os << (i ? ", " : "") << b.names[i].first << " => " << b.names[i].second;
      }
      os << ")";
    }
  }
  void operator()(const FiberProdItem& f) {
    os << "fiberprod " << f.name << " of " << f.a << " and " << f.b << " over " << f.base << " via "
       << f.pa << " " << f.pb;
    if (f.pushforward) os << " pushforward " << *f.pushforward;
  }
  void operator()(const PullbackItem& p) {
    os << "pullback " << p.name << " : " << p.source << " -> " << p.target << " {";
    for (const auto& [g, e] : p.images) os << "\n  " << g << " => " << print_expr(*e) << ";";
    os << (p.images.empty() ? "}" : "\n}");
  }
  void operator()(const PushforwardItem& p) {
    os << "pushforward " << p.name << " : " << p.source << " -> " << p.target << " shift " << p.shift;
    if (p.over) os << " over " << *p.over;
    if (p.extends) os << " extends " << *p.extends;
    os << " {";
    for (const auto& [x, y] : p.values) os << "\n  " << print_expr(*x) << " => " << print_expr(*y) << ";";
    os << (p.values.empty() ? "}" : "\n}");
  }
  void operator()(const FibrationItem& f) {
    os << "fibration " << f.name << " total " << f.total << " base " << f.base << " pullback "
       << f.pullback << " pushforward " << f.pushforward << " K " << print_expr(*f.K);
    if (f.c1) os << " c1 " << print_expr(*f.c1) << " c2 " << print_expr(*f.c2);
  }
  void operator()(const TautItem& t) {
    os << "taut " << t.name << " cutoff " << t.cutoff << " genus " << t.genus << " degree " << t.degree;
    if (t.ksquarezero) os << " ksquarezero";
  }
  void operator()(const AssertItem& a) {
    os << "assert " << a.kind;
    if (a.ring) os << " in " << *a.ring;
    os << ": ";
    if (a.kind == "eq") {
      os << print_expr(*a.exprs[0]) << " == " << print_expr(*a.exprs[1]);
    } else if (a.kind == "zero") {
      os << print_expr(*a.exprs[0]);
    } else if (a.kind == "dim") {
      if (!a.dim_mode.empty()) os << a.dim_mode << " ";
      os << a.ints[0] << " == " << a.ints[1];
    } else if (a.kind == "hilbert") {
      os << "(";
      for (std::size_t i = 0; i < a.ints.size(); ++i) os << (i ? ", " : "") << a.ints[i];
      os << ")";
    } else if (a.kind == "basis") {
      os << "(" << join(a.exprs) << ")";
    } else {
      for (std::size_t i = 0; i < a.names.size(); ++i) os << (i ? ", " : "") << a.names[i];
      if (a.scale) os << " scale " << print_expr(*a.scale);
    }
    if (a.label) os << " label " << quoted(*a.label);
    if (a.expect_fail) os << " expect fail";
  }
};

}  // namespace

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.value.get_str();
    case Expr::Kind::Name:
      return e.name;
    case Expr::Kind::Call:
      return e.name + "(" + join(e.args) + ")";
    case Expr::Kind::Add:
      return at(*e.args[0], 1) + " + " + at(*e.args[1], 2);
    case Expr::Kind::Sub:
      return at(*e.args[0], 1) + " - " + at(*e.args[1], 2);
    case Expr::Kind::Mul:
      return at(*e.args[0], 2) + "*" + at(*e.args[1], 3);
    case Expr::Kind::Div:
      return at(*e.args[0], 2) + "/" + at(*e.args[1], 3);
    case Expr::Kind::Neg:
      return "-" + at(*e.args[0], 3);
    case Expr::Kind::Pow:
      return at(*e.args[0], 5) + "^" + std::to_string(e.exponent);
  }
  return "";
}

std::string print_item(const Item& item) {
  std::ostringstream os;
  std::visit(ItemPrinter{os}, item.body);
  return os.str();
}

std::string print_scene(const Scene& s) {
  std::string out;
  for (const auto& item : s.items) out += print_item(item) + "\n";
  return out;
}

}  // namespace chowkit::scene
