#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "subprob/property_system.hpp"

namespace subprob {
namespace {

using testing::Rng;

const std::string kDir = SUBPROB_INSTANCE_DIR;

Rational q(long long n, long long d = 1) { return Rational(n, d); }
ExperimentTerm b(const char* s) { return ExperimentTerm::base(s); }

bool has_kind(const std::vector<SpViolation>& v, SpViolation::Kind k) {
  return std::any_of(v.begin(), v.end(), [k](const SpViolation& x) { return x.kind == k; });
}

TEST(Lattice, TrivialSystemHasTwoElements) {
  auto sys = load_sep(kDir + "/trivial.sep");
  auto sp = derive_sp(sys);
  EXPECT_EQ(sp.lattice.size, 2u);
  EXPECT_EQ(sp.lattice.class_of(b("tau")), sp.lattice.top);
  EXPECT_EQ(sp.lattice.class_of(tilde(b("tau"))), sp.lattice.bottom);
  EXPECT_TRUE(validate_sp(sp).empty());
}

TEST(Lattice, WoodStructure) {
  auto sys = load_sep(kDir + "/wood.sep");
  auto sp = derive_sp(sys);
  const auto& lat = sp.lattice;
  auto burn = *lat.class_of(b("burn"));
  auto flt = *lat.class_of(b("float"));
  auto both = *lat.class_of(product({b("burn"), b("float")}));
  EXPECT_EQ(lat.meet[burn][flt], both);
  EXPECT_EQ(lat.top, *lat.class_of(b("tau")));
  EXPECT_EQ(lat.bottom, *lat.class_of(tilde(b("tau"))));
  const auto p = sys.state_index("p");
  EXPECT_TRUE(sp.xi[p][both]);
  EXPECT_TRUE(sp.xi[p][burn]);
  EXPECT_FALSE(sp.xi[sys.state_index("wenge")][both]);
  EXPECT_EQ(lat.size, 7u);
  EXPECT_TRUE(sp.state_leq[p][sys.state_index("wet_pine")]);
  EXPECT_FALSE(sp.state_leq[sys.state_index("wet_pine")][p]);
  EXPECT_TRUE(validate_sp(sp).empty());
  EXPECT_TRUE(sp.warnings.empty());
  EXPECT_EQ(lat.label(both), "prod(burn, float)");
}

TEST(Lattice, DotAndText) {
  auto sp = derive_sp(load_sep(kDir + "/trivial.sep"));
  auto dot = lattice_dot(sp);
  EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
  EXPECT_NE(dot.find("->"), std::string::npos);
  EXPECT_NE(sp_text(sp).find("tau"), std::string::npos);
}

TEST(Preorders, MatchDefinitions) {
  Rng rng(31);
  for (int iter = 0; iter < 60; ++iter) {
    auto sys = testing::random_sep(rng);
    ASSERT_EQ(state_preorder(sys), testing::state_preorder_by_definition(sys));
    auto pre = experiment_preorder(sys, UnitIntervalSet::point(1));
    for (int k = 0; k < 40; ++k) {
      auto i = testing::uniform_int(rng, 0, pre.terms.size() - 1);
      auto j = testing::uniform_int(rng, 0, pre.terms.size() - 1);
      ASSERT_EQ(pre.leq[i][j], testing::experiment_leq_by_definition(sys, pre.terms[i], pre.terms[j]));
      ASSERT_EQ(pre.certainty[i], certainty_set(sys, pre.terms[i], UnitIntervalSet::point(1)));
    }
  }
}

TEST(Preorders, ReflexiveTransitive) {
  Rng rng(37);
  for (int iter = 0; iter < 60; ++iter) {
    auto sys = testing::random_sep(rng);
    auto rel = state_preorder(sys);
    const auto n = rel.size();
    for (std::size_t a = 0; a < n; ++a) {
      ASSERT_TRUE(rel[a][a]);
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) ASSERT_TRUE(!(rel[a][c] && rel[c][d]) || rel[a][d]);
      }
    }
  }
}

TEST(Classes, PartitionTheTermUniverse) {
  Rng rng(41);
  for (int iter = 0; iter < 40; ++iter) {
    auto sys = testing::random_sep(rng);
    auto classes = equivalence_classes(sys, UnitIntervalSet::point(1));
    std::size_t total = 0;
    for (const auto& cls : classes) {
      total += cls.size();
      auto cert = certainty_set(sys, cls.front(), UnitIntervalSet::point(1));
      for (const auto& t : cls) ASSERT_EQ(certainty_set(sys, t, UnitIntervalSet::point(1)), cert);
    }
    ASSERT_EQ(total, enumerate_terms(sys.experiments()).size());
  }
}

TEST(LatticeLaws, MeetJoinMatchBruteForce) {
  Rng rng(43);
  for (int iter = 0; iter < 60; ++iter) {
    auto sys = testing::random_sep(rng);
    auto lat = build_lattice(sys);
    for (std::size_t a = 0; a < lat.size; ++a) {
      for (std::size_t c = 0; c < lat.size; ++c) {
        ASSERT_EQ(testing::brute_glb(lat.leq, a, c), lat.meet[a][c]);
        ASSERT_EQ(testing::brute_lub(lat.leq, a, c), lat.join[a][c]);
        auto prod = product({lat.classes[a].representative, lat.classes[c].representative});
        ASSERT_EQ(certainty_set(sys, prod, UnitIntervalSet::point(1)),
                  lat.classes[a].certainty & lat.classes[c].certainty);
      }
    }
    ASSERT_EQ(lat.class_of(tilde(b("tau"))), lat.bottom);
    ASSERT_EQ(lat.class_of(b("tau")), lat.top);
  }
}

TEST(LatticeLaws, DerivedSystemsSatisfyAxioms) {
  Rng rng(47);
  for (int iter = 0; iter < 60; ++iter) {
    auto sys = testing::random_sep(rng);
    auto sp = derive_sp(sys);
    auto v = validate_sp(sp);
    ASSERT_TRUE(v.empty()) << kind_name(v.front().kind) << ": " << v.front().message << "\n" << format_sep(sys);
  }
}

TEST(LatticeLaws, MeetAllOfEmptyFamilyIsTop) {
  auto lat = build_lattice(load_sep(kDir + "/wood.sep"));
  EXPECT_EQ(lat.meet_all({}), lat.top);
  std::vector<std::size_t> all(lat.size);
  for (std::size_t i = 0; i < lat.size; ++i) all[i] = i;
  EXPECT_EQ(lat.meet_all(all), lat.bottom);
}

TEST(ValidateSp, DetectsHandBuiltViolations) {
  auto base = derive_sp(load_sep(kDir + "/wood.sep"));
  const auto p = 0u;

  auto no_top = base;
  no_top.xi[p][no_top.lattice.top] = false;
  EXPECT_TRUE(has_kind(validate_sp(no_top), SpViolation::Kind::statprop01));

  auto bottom_actual = base;
  bottom_actual.xi[p][bottom_actual.lattice.bottom] = true;
  EXPECT_TRUE(has_kind(validate_sp(bottom_actual), SpViolation::Kind::statprop02));

  // p and q with xi(q) within xi(p) but p < q denied.
  auto order = base;
  const auto wet = 1u;
  ASSERT_TRUE(order.state_leq[p][wet]);
  order.state_leq[p][wet] = false;
  EXPECT_TRUE(has_kind(validate_sp(order), SpViolation::Kind::statprop04));

  // Meet table pointing at the wrong element.
  auto meet = base;
  auto burn = *meet.lattice.class_of(b("burn"));
  auto flt = *meet.lattice.class_of(b("float"));
  meet.lattice.meet[burn][flt] = meet.lattice.bottom;
  EXPECT_TRUE(has_kind(validate_sp(meet), SpViolation::Kind::lattice));

  // Drop a property from xi(p) that is the meet of two actual ones.
  auto partial = base;
  auto both = *partial.lattice.class_of(product({b("burn"), b("float")}));
  partial.xi[p][both] = false;
  EXPECT_TRUE(has_kind(validate_sp(partial), SpViolation::Kind::statprop03));

  // prod(burn, float) actual in wenge where float is not, yet it lies below float.
  auto below = base;
  below.xi[2][both] = true;
  EXPECT_TRUE(has_kind(validate_sp(below), SpViolation::Kind::statprop05));

  auto malformed = base;
  malformed.xi.pop_back();
  EXPECT_TRUE(has_kind(validate_sp(malformed), SpViolation::Kind::malformed));
}

TEST(General, UnitTargetMatchesDeriveSp) {
  auto sys = load_sep(kDir + "/volvo.sep");
  auto a = derive_sp(sys);
  auto g = derive_sp_general(sys, UnitIntervalSet::point(1));
  EXPECT_EQ(a.lattice.leq, g.lattice.leq);
  EXPECT_EQ(a.xi, g.xi);
}

TEST(General, NearCertaintyWidensCertainty) {
  auto sys = parse_sep("states: p\nexperiments: a\nmu a p = {0.95}\n");
  auto strict = derive_sp(sys);
  EXPECT_FALSE(strict.xi[0][*strict.lattice.class_of(b("a"))]);
  auto near = derive_sp_general(sys, UnitIntervalSet::closed(q(9, 10), 1));
  EXPECT_TRUE(near.xi[0][*near.lattice.class_of(b("a"))]);
  EXPECT_TRUE(validate_sp(near).empty());
  EXPECT_TRUE(near.warnings.empty());
}

TEST(General, WholeIntervalBreaksStatprop02) {
  auto sys = load_sep(kDir + "/wood.sep");
  auto sp = derive_sp_general(sys, UnitIntervalSet::unit());
  EXPECT_FALSE(sp.warnings.empty());
  EXPECT_TRUE(has_kind(validate_sp(sp), SpViolation::Kind::statprop02));
}

TEST(General, TargetWithoutOneWarnsOrThrows) {
  auto sys = parse_sep("states: p\nexperiments: a\nmu a p = {1/2}\n");
  auto sp = derive_sp_general(sys, UnitIntervalSet::point(q(1, 2)));
  EXPECT_FALSE(sp.warnings.empty());
  // cert(a) = {x} and cert(b) = {y}: two maximal classes, no greatest one.
  auto split = parse_sep("states: x, y\nexperiments: a, b\nmu a x = {1/2}\nmu a y = {0}\n"
                         "mu b x = {0}\nmu b y = {1/2}\n");
  EXPECT_THROW(derive_sp_general(split, UnitIntervalSet::point(q(1, 2))), std::domain_error);
}

TEST(General, RandomTargetsContainingOneGiveLattices) {
  Rng rng(53);
  for (int iter = 0; iter < 40; ++iter) {
    auto sys = testing::random_sep(rng);
    auto a = unite(testing::random_interval_set(rng, 2, 10), UnitIntervalSet::point(1));
    auto sp = derive_sp_general(sys, a);
    for (std::size_t x = 0; x < sp.lattice.size; ++x) {
      for (std::size_t y = 0; y < sp.lattice.size; ++y) {
        ASSERT_EQ(testing::brute_glb(sp.lattice.leq, x, y), sp.lattice.meet[x][y]);
      }
    }
    auto v = validate_sp(sp);
    for (const auto& e : v) ASSERT_EQ(e.kind, SpViolation::Kind::statprop02) << e.message;
  }
}

}  // namespace
}  // namespace subprob
