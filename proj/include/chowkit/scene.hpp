// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chowkit/constructions.hpp"
#include "chowkit/grr.hpp"
#include "chowkit/rational.hpp"
#include "chowkit/ring.hpp"

namespace chowkit::scene {

struct Location {
  std::string file;
  int line = 0;
  int col = 0;
  std::string str() const { return file + ":" + std::to_string(line); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const Location& loc, const std::string& msg)
      : std::runtime_error(loc.file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.col) +
                           ": " + msg),
        loc_(loc) {}
  const Location& location() const { return loc_; }

 private:
  Location loc_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, Name, Add, Sub, Mul, Div, Pow, Neg, Call };
  Kind kind = Kind::Number;
  Rational value;             // Number
  std::string name;           // Name, Call
  std::vector<ExprPtr> args;  // operands or call arguments
  int exponent = 0;           // Pow
  Location loc;
};

// Items. Every item keeps the location of its leading keyword.

struct GenSpec {
  std::string name;
  int degree = 1;
};

struct RingItem {
  std::string name;
  std::vector<GenSpec> gens;
  std::vector<ExprPtr> rels;
  int top = 0;
};

struct ClassItem {
  std::string name;
  std::string ring;
  ExprPtr value;
};

struct QuotientItem {
  std::string name;
  std::string ring;
  std::vector<ExprPtr> classes;
};

struct AdjoinItem {
  std::string name;
  std::string ring;
  GenSpec gen;
  std::vector<ExprPtr> rels;
};

struct PBundleItem {
  std::string name;
  std::string base;
  int rank = 1;
  std::vector<ExprPtr> chern;
  std::string hyperplane;
};

struct BlowupItem {
  std::string name;
  std::string ambient;
  std::string center;
  std::string pullback;
  std::string pushforward;
  std::vector<ExprPtr> normal;
  std::string exceptional;
  std::vector<std::pair<std::string, std::string>> names;
};

struct FiberProdItem {
  std::string name;
  std::string a;
  std::string b;
  std::string base;
  std::string pa;
  std::string pb;
  std::optional<std::string> pushforward;
};

struct PullbackItem {
  std::string name;
  std::string source;
  std::string target;
  std::vector<std::pair<std::string, ExprPtr>> images;
};

struct PushforwardItem {
  std::string name;
  std::string source;
  std::string target;
  int shift = 0;
  std::optional<std::string> over;
  std::optional<std::string> extends;
  std::vector<std::pair<ExprPtr, ExprPtr>> values;
};

struct FibrationItem {
  std::string name;
  std::string total;
  std::string base;
  std::string pullback;
  std::string pushforward;
  ExprPtr K;
  ExprPtr c1;  // may be null
  ExprPtr c2;
};

struct TautItem {
  std::string name;
  int cutoff = 1;
  int genus = 2;
  int degree = 0;
  bool ksquarezero = false;
};

struct AssertItem {
  std::string kind;  // eq zero dim hilbert mapok projform pushpull iso basis blowupok
  std::optional<std::string> ring;
  std::vector<ExprPtr> exprs;  // eq: lhs, rhs; zero: one; basis: many
  std::vector<long> ints;      // hilbert: sequence; dim: degree, value
  std::string dim_mode;        // dim: "", "ker" or "im"
  std::vector<std::string> names;
  ExprPtr scale;  // pushpull, may be null
  std::optional<std::string> label;
  bool expect_fail = false;
};

using ItemBody = std::variant<RingItem, ClassItem, QuotientItem, AdjoinItem, PBundleItem, BlowupItem,
                              FiberProdItem, PullbackItem, PushforwardItem, FibrationItem, TautItem,
                              AssertItem>;

struct Item {
  ItemBody body;
  Location loc;
};

struct Scene {
  std::string file;
  std::vector<Item> items;
};

Scene parse_scene(const std::string& text, const std::string& file = "<input>");
ExprPtr parse_expression(const std::string& text, const std::string& file = "<expr>");

// Canonical text; parsing it yields the same scene.
std::string print_scene(const Scene& s);
std::string print_expr(const Expr& e);
std::string print_item(const Item& item);

enum class Status { Pass, Fail, Error };

struct Entry {
  std::string label;
  Status status = Status::Pass;
  std::optional<std::string> witness;
  Location location;
  bool expected_fail = false;
};

struct Report {
  std::vector<Entry> entries;
  int passed() const;
  int failed() const;
  int errors() const;
  bool ok() const { return failed() == 0 && errors() == 0; }
};

enum class Format { Text, Json };

std::string format_report(const Report& r, Format f);

// Everything a scene has declared so far, by name.
class Environment {
 public:
  Environment();
  ~Environment();
  Environment(Environment&&) noexcept;
  Environment& operator=(Environment&&) noexcept;

  bool has_ring(const std::string& name) const;
  // Throws DomainError for an unknown name.
  RingPtr ring(const std::string& name) const;
  std::vector<std::string> ring_names() const;

  // Declared objects by name; each throws DomainError when absent.
  const RingMorphism& pullback(const std::string& name) const;
  const LinearMap& pushforward(const std::string& name) const;
  const Element& named_class(const std::string& name) const;
  const ProjectiveBundle& bundle(const std::string& name) const;
  const BlowupModel& blowup(const std::string& name) const;
  const BlowupPresentation& blowup_presentation(const std::string& name) const;
  const Fibration& fibration(const std::string& name) const;

  // Evaluate an expression whose value must lie in `ring`.
  Element evaluate(const std::string& ring, const std::string& expr) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
  friend Report eval_scene(const Scene& s, Environment& env);
};

// Runs every item in order. Declaration failures and assertion failures are
// recorded as entries; nothing aborts the run.
Report eval_scene(const Scene& s);
Report eval_scene(const Scene& s, Environment& env);

}  // namespace chowkit::scene
