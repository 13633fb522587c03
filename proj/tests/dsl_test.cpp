// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include <json.hpp>

#include "chowkit/corpus.hpp"
#include "chowkit/scene.hpp"
#include "support.hpp"

namespace chowkit::scene {
namespace {

const char* kPxi = R"(ring J { gens: T:1; rels: T^3; top: 2 }
pbundle P_xi over J rank 4 chern (-T, 1/2*T^2, 0, 0) hyperplane H
)";

Report run(const std::string& text) { return eval_scene(parse_scene(text, "t.chow")); }

TEST(Parse, EmptySceneGivesEmptyReport) {
  const Report r = run("");
  EXPECT_TRUE(r.entries.empty());
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(run("# only a comment\n\n").entries.empty());
}

TEST(Parse, SyntaxErrorCarriesLineAndColumn) {
  try {
    parse_scene("ring R { gens: x:1; rels: ; top: 2 }\nassert eq in R: x == )\n", "s.chow");
    FAIL() << "incomplete assertion parsed";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().line, 2);
    EXPECT_GT(e.location().col, 0);
    EXPECT_EQ(std::string(e.what()).rfind("s.chow:2:", 0), 0u) << e.what();
  }
}

TEST(Parse, UnicodeNamesRejected) {
  EXPECT_THROW(parse_scene("ring R { gens: \xce\x98:1; rels: ; top: 2 }"), ParseError);
}

TEST(Parse, DecimalLiteralsRejected) {
  EXPECT_THROW(parse_expression("0.5*T"), ParseError);
}

TEST(Eval, InhomogeneousRingReportedAtRelation) {
  const Report r = run("ring R { gens: x:1, y:2;\n  rels: x^2 + y^2; top: 4 }\n");
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].status, Status::Error);
  ASSERT_TRUE(r.entries[0].witness);
  // The witness points at the relation's own line, not the ring keyword.
  EXPECT_NE(r.entries[0].witness->find("t.chow:2: relation x^2 + y^2 is not homogeneous"), std::string::npos)
      << *r.entries[0].witness;
}

TEST(Eval, BasisMonomialIsNotZero) {
  const Report r = run(std::string(kPxi) + "assert zero in P_xi: H^3\n");
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].status, Status::Fail);
  EXPECT_EQ(r.entries[0].witness, "H^3");
  EXPECT_EQ(r.entries[0].location.line, 3);
  EXPECT_FALSE(r.ok());
}

TEST(Eval, ExpectedFailureCountsAsPass) {
  const Report r = run(std::string(kPxi) + "assert zero in P_xi: H^3 label \"not zero\" expect fail\n");
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].status, Status::Pass);
  EXPECT_TRUE(r.entries[0].expected_fail);
  EXPECT_TRUE(r.ok());
  // An expected failure that passes is itself a failure.
  const Report s = run(std::string(kPxi) + "assert zero in P_xi: T^3 expect fail\n");
  EXPECT_EQ(s.entries[0].status, Status::Fail);
}

TEST(Eval, UndefinedNameIsAnErrorEntryNotAnAbort) {
  const Report r = run(std::string(kPxi) + "assert zero in P_xi: Q\nassert zero in P_xi: T^3\n");
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.entries[0].status, Status::Error);
  EXPECT_EQ(r.entries[1].status, Status::Pass);
}

TEST(Eval, BundlePushforwardValues) {
  const Report r = run(std::string(kPxi) +
                       "assert eq in J: bpush(P_xi, 1) == -T\n"
                       "assert eq in J: push(P_xi_push, H^4) == -T\n"
                       "assert hilbert in P_xi: (1, 2, 3, 3, 2, 1)\n");
  EXPECT_EQ(r.passed(), 3);
}

TEST(Report, JsonSchema) {
  const Report r = run(std::string(kPxi) + "assert zero in P_xi: H^3 label \"h3\"\nassert zero in P_xi: T^3\n");
  const auto j = nlohmann::json::parse(format_report(r, Format::Json));
  ASSERT_TRUE(j.contains("assertions"));
  ASSERT_TRUE(j.contains("summary"));
  EXPECT_EQ(j["summary"]["pass"], 1);
  EXPECT_EQ(j["summary"]["fail"], 1);
  EXPECT_EQ(j["summary"]["error"], 0);
  ASSERT_EQ(j["assertions"].size(), 2u);
  const auto& a = j["assertions"][0];
  EXPECT_EQ(a["label"], "h3");
  EXPECT_EQ(a["status"], "fail");
  EXPECT_EQ(a["witness"], "H^3");
  EXPECT_EQ(a["location"], "t.chow:3");
  EXPECT_TRUE(j["assertions"][1]["witness"].is_null());
}

TEST(Report, TextSummaryLine) {
  const std::string text = format_report(run(std::string(kPxi) + "assert zero in P_xi: T^3\n"), Format::Text);
  EXPECT_NE(text.find("1 passed, 0 failed, 0 errors"), std::string::npos);
}

TEST(Print, ExpressionPrecedence) {
  EXPECT_EQ(print_expr(*parse_expression("(a + b)*c - (d - e)")), "(a + b)*c - (d - e)");
  EXPECT_EQ(print_expr(*parse_expression("-(H^3*T) - 1/2*H^2")), "-(H^3*T) - 1/2*H^2");
  EXPECT_EQ(print_expr(*parse_expression("(x^2)^3")), "(x^2)^3");
}

// parse . print . parse is stable on every corpus file.
TEST(DslProperty, PrintParseRoundTripOnCorpus) {
  for (const auto& name : corpus::list_cases()) {
    const Scene a = parse_scene(std::string(corpus::load_case(name).scene), name);
    const std::string printed = print_scene(a);
    const Scene b = parse_scene(printed, name);
    ASSERT_EQ(a.items.size(), b.items.size()) << name;
    EXPECT_EQ(print_scene(b), printed) << name;
  }
}

// Random expressions survive print and re-parse.
TEST(DslProperty, RandomExpressionRoundTrip) {
  testing::Sampler s(31);
  const std::vector<std::string> atoms = {"H", "T", "E", "Ks", "1/2", "3", "push(P, H^2)"};
  auto gen = [&](auto&& self, int depth) -> std::string {
    if (depth == 0 || s.uniform(0, 3) == 0) return atoms[static_cast<std::size_t>(s.uniform(0, 6))];
    switch (s.uniform(0, 4)) {
      case 0:
        return "(" + self(self, depth - 1) + " + " + self(self, depth - 1) + ")";
      case 1:
        return self(self, depth - 1) + " - " + self(self, depth - 1);
      case 2:
        return "(" + self(self, depth - 1) + ")*" + self(self, depth - 1);
      case 3:
        return "-(" + self(self, depth - 1) + ")";
      default:
        return "(" + self(self, depth - 1) + ")^" + std::to_string(s.uniform(0, 3));
    }
  };
  for (int n = 0; n < 200; ++n) {
    const std::string src = gen(gen, 4);
    const std::string once = print_expr(*parse_expression(src));
    EXPECT_EQ(print_expr(*parse_expression(once)), once) << src;
  }
}

// Moving every assertion after the declarations and shuffling them leaves
// each assertion's status unchanged.
TEST(DslProperty, AssertionOrderIndependence) {
  const auto cases = corpus::list_cases();
  testing::Sampler s(32);
  std::map<std::string, std::map<std::string, Status>> baseline;
  for (const auto& name : cases) {
    for (const auto& e : testing::corpus_case(name).report.entries) baseline[name][e.location.str()] = e.status;
  }
  for (int n = 0; n < 100; ++n) {
    const auto& name = cases[static_cast<std::size_t>(s.uniform(0, static_cast<int>(cases.size()) - 1))];
    const Scene scene = parse_scene(std::string(corpus::load_case(name).scene), name + ".chow");
    Scene shuffled{scene.file, {}};
    std::vector<Item> asserts;
    for (const auto& item : scene.items) {
      (std::holds_alternative<AssertItem>(item.body) ? asserts : shuffled.items).push_back(item);
    }
    std::shuffle(asserts.begin(), asserts.end(), s.engine());
    shuffled.items.insert(shuffled.items.end(), asserts.begin(), asserts.end());
    const Report r = eval_scene(shuffled);
    for (const auto& e : r.entries) {
      const auto it = baseline[name].find(e.location.str());
      ASSERT_NE(it, baseline[name].end()) << name << " " << e.location.str();
      EXPECT_EQ(e.status, it->second) << name << " " << e.label;
    }
  }
}

TEST(Environment, EvaluateAndLookup) {
  Environment env;
  eval_scene(parse_scene(kPxi), env);
  EXPECT_TRUE(env.has_ring("P_xi"));
  EXPECT_EQ(env.evaluate("P_xi", "H^4").str(), "-(H^3*T) - 1/2*H^2*T^2");
  EXPECT_NO_THROW(env.bundle("P_xi"));
  EXPECT_NO_THROW(env.pullback("P_xi_pull"));
  EXPECT_THROW(env.ring("Nope"), std::exception);
  EXPECT_THROW(env.evaluate("P_xi", "Nope"), std::exception);
}

}  // namespace
}  // namespace chowkit::scene
