#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "generators.hpp"
#include "subprob/sep.hpp"

namespace subprob {
namespace {

using testing::Rng;

const std::string kDir = SUBPROB_INSTANCE_DIR;

Rational q(long long n, long long d = 1) { return Rational(n, d); }
ExperimentTerm b(const char* s) { return ExperimentTerm::base(s); }

SepSystem wood() { return load_sep(kDir + "/wood.sep"); }

TEST(SepParse, WoodInstance) {
  auto sys = wood();
  EXPECT_EQ(sys.states(), (std::vector<std::string>{"p", "wet_pine", "wenge", "charred"}));
  EXPECT_EQ(sys.experiments(), (std::vector<std::string>{"tau", "burn", "float"}));
  EXPECT_EQ(sys.entry("burn", "wet_pine"), UnitIntervalSet::closed(0, q(1, 2)));
  EXPECT_EQ(sys.entry("tau", "charred"), UnitIntervalSet::point(1));
  EXPECT_TRUE(validate_sep(sys).empty());
  EXPECT_EQ(sys.state_index("wenge"), 2u);
  EXPECT_THROW(sys.state_index("oak"), LookupError);
  EXPECT_THROW(sys.entry("burn", "oak"), LookupError);
  EXPECT_THROW(sys.entry("sink", "p"), LookupError);
}

TEST(SepParse, AddsUnitSymbolAndRows) {
  auto sys = parse_sep("states: x\nexperiments: a\nmu a x = {1/2}\n");
  EXPECT_EQ(sys.experiments().front(), "tau");
  EXPECT_EQ(sys.entry("tau", "x"), UnitIntervalSet::point(1));
  EXPECT_TRUE(validate_sep(sys).empty());
}

TEST(SepParse, ErrorsCarryLineAndColumn) {
  try {
    load_sep(kDir + "/inverted_interval.sep");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 10u);
    EXPECT_NE(std::string(e.what()).find("inverted interval"), std::string::npos);
  }
  auto line_of = [](const char* text) {
    try {
      parse_sep(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("states: x\nstates: y\n"), 2u);
  EXPECT_EQ(line_of("states: x\nexperiments: a\nmu a x = {1}\nmu a x = {0}\n"), 4u);
  EXPECT_EQ(line_of("states: x\nexperiments: a\nmu a x {1}\n"), 3u);
  EXPECT_EQ(line_of("states: x\nbogus\n"), 2u);
  EXPECT_EQ(line_of("states: x\nexperiments: a\nmu a x = [0, 2]\n"), 3u);
}

TEST(SepParse, FormatRoundTrip) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    auto sys = testing::random_sep(rng);
    ASSERT_EQ(parse_sep(format_sep(sys)), sys) << format_sep(sys);
  }
}

TEST(SepValidate, ReportsEveryViolation) {
  auto sys = load_sep(kDir + "/missing_entry.sep");
  auto v = validate_sep(sys);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, SepViolation::Kind::missing_entry);
  EXPECT_EQ(v[0].describe(), "MissingEntry(float, wet)");

  SubsetProbabilityTable table{{{"tau", "p"}, UnitIntervalSet::point(q(1, 2))},
                               {{"a", "p"}, UnitIntervalSet::point(1)},
                               {{"a", "ghost"}, UnitIntervalSet::point(1)},
                               {{"zz", "p"}, UnitIntervalSet::point(1)}};
  SepSystem bad({"p", "p"}, {"tau", "a", "a"}, table);
  auto kinds = validate_sep(bad);
  auto has = [&](SepViolation::Kind k) {
    return std::any_of(kinds.begin(), kinds.end(), [&](const SepViolation& x) { return x.kind == k; });
  };
  EXPECT_TRUE(has(SepViolation::Kind::duplicate_state));
  EXPECT_TRUE(has(SepViolation::Kind::duplicate_experiment));
  EXPECT_TRUE(has(SepViolation::Kind::unit_axiom));
  EXPECT_TRUE(has(SepViolation::Kind::unknown_state));
  EXPECT_TRUE(has(SepViolation::Kind::unknown_experiment));

  SepSystem empty({}, {"a"}, {});
  auto e = validate_sep(empty);
  EXPECT_TRUE(std::any_of(e.begin(), e.end(), [](const SepViolation& x) { return x.kind == SepViolation::Kind::no_states; }));
  EXPECT_TRUE(std::any_of(e.begin(), e.end(), [](const SepViolation& x) { return x.kind == SepViolation::Kind::missing_unit; }));
}

TEST(MuEval, WoodValues) {
  auto sys = wood();
  auto bf = product({b("burn"), b("float")});
  EXPECT_EQ(mu_eval(sys, bf, "p"), UnitIntervalSet::point(1));
  EXPECT_EQ(mu_eval(sys, bf, "wet_pine"), parse_interval_set("[0, 1/2] u {1}"));
  EXPECT_EQ(mu_eval(sys, tilde(b("float")), "wenge"), UnitIntervalSet::point(1));
  EXPECT_EQ(mu_eval(sys, tilde(b("tau")), "p"), UnitIntervalSet::point(0));
  EXPECT_TRUE(is_certain(sys, bf, "p"));
  EXPECT_FALSE(is_certain(sys, bf, "wenge"));
  EXPECT_TRUE(is_close_to_certain(sys, b("float"), "charred", q(1, 10)));
  EXPECT_FALSE(is_close_to_certain(sys, b("float"), "charred", q(1, 20)));
  EXPECT_THROW(is_close_to_certain(sys, b("float"), "p", q(2)), std::domain_error);
}

TEST(MuEval, UnperformableIsVacuouslyCertain) {
  auto sys = parse_sep("states: x\nexperiments: a\nmu a x = empty\n");
  EXPECT_TRUE(is_certain(sys, b("a"), "x"));
  EXPECT_FALSE(is_performable(sys, b("a"), "x"));
  EXPECT_TRUE(is_performable(sys, b("tau"), "x"));
}

TEST(SepLaws, TildemorphAndProduct) {
  Rng rng(101);
  for (int iter = 0; iter < 200; ++iter) {
    auto sys = testing::random_sep(rng);
    for (int k = 0; k < 5; ++k) {
      auto s = sys.states()[testing::uniform_int(rng, 0, sys.states().size() - 1)];
      auto t = testing::random_term(rng, sys.experiments());
      auto u = testing::random_term(rng, sys.experiments());
      ASSERT_EQ(mu_eval(sys, tilde(t), s), one_minus(mu_eval(sys, t, s)));
      ASSERT_EQ(mu_eval(sys, product({t, u}), s), unite(mu_eval(sys, t, s), mu_eval(sys, u, s)));
      ASSERT_EQ(mu_eval(sys, b("tau"), s), UnitIntervalSet::point(1));
    }
  }
}

TEST(SepLaws, CertaintyAndTransfer) {
  Rng rng(202);
  for (int iter = 0; iter < 200; ++iter) {
    auto sys = testing::random_sep(rng);
    auto factors = testing::random_factors(rng, sys.experiments());
    auto prod_all = product(factors);
    auto a = testing::random_interval_set(rng, 3, 20);
    auto eps = testing::random_rational(rng, 20);
    for (const auto& s : sys.states()) {
      bool all_certain = true;
      bool all_close = true;
      bool all_within = true;
      for (const auto& f : factors) {
        all_certain = all_certain && is_certain(sys, f, s);
        all_close = all_close && is_close_to_certain(sys, f, s, eps);
        all_within = all_within && holds_within(sys, f, s, a);
      }
      ASSERT_EQ(is_certain(sys, prod_all, s), all_certain);
      ASSERT_EQ(is_close_to_certain(sys, prod_all, s, eps), all_close);
      ASSERT_EQ(holds_within(sys, prod_all, s, a), all_within);
      auto report = transfer_check(sys, factors, s, a);
      ASSERT_TRUE(report.agree);
      ASSERT_EQ(report.product_within, all_within);
    }
  }
}

TEST(SepLaws, TransferRejectsEmptyFamily) {
  auto sys = wood();
  EXPECT_THROW(transfer_check(sys, std::vector<ExperimentTerm>{}, "p", UnitIntervalSet::point(1)), std::domain_error);
}

}  // namespace
}  // namespace subprob
