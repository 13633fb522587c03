// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "chowkit/corpus.hpp"
#include "chowkit/error.hpp"
#include "chowkit/scene.hpp"

namespace chowkit::cli {

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string base_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

// Declarations only; assertions are skipped when all we need is a ring.
scene::Environment declare_only(const scene::Scene& s) {
  scene::Scene decls{s.file, {}};
  for (const auto& item : s.items) {
    if (!std::holds_alternative<scene::AssertItem>(item.body)) decls.items.push_back(item);
  }
  scene::Environment env;
  scene::eval_scene(decls, env);
  return env;
}

// The environment that declares `ring`: the given file, or the first corpus
// case that has it.
std::optional<scene::Environment> find_ring(const std::string& ring, const std::string& file,
                                            std::ostream& err) {
  if (!file.empty()) {
    const auto text = read_file(file);
    if (!text) {
      err << "error: cannot read " << file << "\n";
      return std::nullopt;
    }
    scene::Environment env = declare_only(scene::parse_scene(*text, base_name(file)));
    if (env.has_ring(ring)) return env;
    err << "error: " << file << " declares no ring " << ring << "\n";
    return std::nullopt;
  }
  for (const auto& name : corpus::list_cases()) {
    const auto c = corpus::load_case(name);
    scene::Environment env = declare_only(scene::parse_scene(std::string(c.scene), name + ".chow"));
    if (env.has_ring(ring)) return env;
  }
  err << "error: no corpus case declares a ring " << ring << "\n";
  return std::nullopt;
}

int finish(const scene::Report& r, bool json, std::ostream& out) {
  out << scene::format_report(r, json ? scene::Format::Json : scene::Format::Text);
  return r.ok() ? kOk : kFailures;
}

int cmd_check(const std::string& path, bool json, std::ostream& out, std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path << "\n";
    return kUsage;
  }
  return finish(scene::eval_scene(scene::parse_scene(*text, base_name(path))), json, out);
}

int cmd_paper_suite(const std::string& only, bool json, std::ostream& out, std::ostream& err) {
  std::vector<std::string> cases = corpus::list_cases();
  if (!only.empty()) {
    // An exact name, or a prefix naming exactly one case.
    std::vector<std::string> hits;
    for (const auto& c : cases) {
      if (c == only) {
        hits = {c};
        break;
      }
      if (c.rfind(only, 0) == 0) hits.push_back(c);
    }
    if (hits.size() != 1) {
      err << "error: " << (hits.empty() ? "unknown" : "ambiguous") << " case " << only
          << "; available cases:\n";
      for (const auto& c : cases) err << "  " << c << "\n";
      return kUsage;
    }
    cases = hits;
  }
  scene::Report all;
  for (const auto& name : cases) {
    const auto c = corpus::load_case(name);
    scene::Report r = scene::eval_scene(scene::parse_scene(std::string(c.scene), name + ".chow"));
    if (!json) {
      out << "== " << name << "\n" << scene::format_report(r, scene::Format::Text);
    }
    all.entries.insert(all.entries.end(), r.entries.begin(), r.entries.end());
  }
  if (json) {
    out << scene::format_report(all, scene::Format::Json);
  } else {
    out << "== total: " << all.passed() << " passed, " << all.failed() << " failed, " << all.errors()
        << " errors\n";
  }
  return all.ok() ? kOk : kFailures;
}

int cmd_basis(const std::string& ring, int degree, const std::string& file, std::ostream& out,
              std::ostream& err) {
  auto env = find_ring(ring, file, err);
  if (!env) return kUsage;
  const RingPtr r = env->ring(ring);
  if (degree < 0 || degree > r->top_degree()) {
    err << "error: degree " << degree << " is outside 0.." << r->top_degree() << " for " << ring << "\n";
    return kUsage;
  }
  for (std::size_t i = 0; i < r->dim(degree); ++i) {
    out << (i ? ", " : "") << r->format_basis_monomial(degree, i);
  }
  out << "\n";
  return kOk;
}

int cmd_eval(const std::string& ring, const std::string& expr, const std::string& file, std::ostream& out,
             std::ostream& err) {
  auto env = find_ring(ring, file, err);
  if (!env) return kUsage;
  out << env->evaluate(ring, expr).str() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact intersection-theory calculator and scene checker", "chowkit"};
  app.require_subcommand(1);

  bool json = false;
  std::string path;
  std::string only;
  std::string ring;
  std::string expr;
  std::string file;
  int degree = 0;

  auto* check = app.add_subcommand("check", "Evaluate a scene file and report every assertion");
  check->add_option("file", path, "Scene file")->required();
  check->add_flag("--json", json, "Print the report as JSON");

  auto* suite = app.add_subcommand("paper-suite", "Run the embedded corpus");
  suite->add_option("--case", only, "Run a single case");
  suite->add_flag("--json", json, "Print the report as JSON");

  auto* basis = app.add_subcommand("basis", "Print the monomial basis of one graded piece");
  basis->add_option("ring", ring, "Ring name")->required();
  basis->add_option("--degree", degree, "Degree")->required();
  basis->add_option("--file", file, "Scene file declaring the ring (default: the corpus)");

  auto* eval = app.add_subcommand("eval", "Print the normal form of an expression");
  eval->add_option("ring", ring, "Ring name")->required();
  eval->add_option("expr", expr, "Expression")->required();
  eval->add_option("--file", file, "Scene file declaring the ring (default: the corpus)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*check) return cmd_check(path, json, out, err);
    if (*suite) return cmd_paper_suite(only, json, out, err);
    if (*basis) return cmd_basis(ring, degree, file, out, err);
    if (*eval) return cmd_eval(ring, expr, file, out, err);
  } catch (const scene::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace chowkit::cli
