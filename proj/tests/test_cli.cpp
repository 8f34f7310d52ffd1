#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "subprob/cli.hpp"
#include "subprob/sep.hpp"

namespace subprob::cli {
namespace {

const std::string kDir = SUBPROB_INSTANCE_DIR;

std::string inst(const char* name) { return kDir + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <class F>
Run capture(F f) {
  std::ostringstream out;
  std::ostringstream err;
  int code = f(out, err);
  return {code, out.str(), err.str()};
}

TEST(CliValidate, ExitCodes) {
  auto ok = capture([](auto& o, auto& e) { return cmd_validate(inst("wood.sep"), o, e); });
  EXPECT_EQ(ok.code, kOk);
  EXPECT_NE(ok.out.find("OK"), std::string::npos);

  auto missing = capture([](auto& o, auto& e) { return cmd_validate(inst("missing_entry.sep"), o, e); });
  EXPECT_EQ(missing.code, kViolations);
  EXPECT_NE(missing.out.find("MissingEntry(float, wet)"), std::string::npos);

  auto inverted = capture([](auto& o, auto& e) { return cmd_validate(inst("inverted_interval.sep"), o, e); });
  EXPECT_EQ(inverted.code, kInputError);
  EXPECT_NE(inverted.err.find("3:10: inverted interval"), std::string::npos);

  auto absent = capture([](auto& o, auto& e) { return cmd_validate(inst("no_such_file.sep"), o, e); });
  EXPECT_EQ(absent.code, kInputError);
}

TEST(CliDeriveSp, TextDotAndTargets) {
  RunConfig config;
  auto text = capture([&](auto& o, auto& e) { return cmd_derive_sp(inst("wood.sep"), config, o, e); });
  EXPECT_EQ(text.code, kOk);
  EXPECT_NE(text.out.find("SP axioms: OK"), std::string::npos);
  EXPECT_NE(text.out.find("prod(burn, float)"), std::string::npos);

  auto dot_path = (std::filesystem::temp_directory_path() / "subprob_test_lattice.dot").string();
  config.dot_path = dot_path;
  config.format = Format::dot;
  auto dot = capture([&](auto& o, auto& e) { return cmd_derive_sp(inst("trivial.sep"), config, o, e); });
  EXPECT_EQ(dot.code, kOk);
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
  EXPECT_EQ(read_text_file(dot_path), dot.out);
  std::filesystem::remove(dot_path);

  RunConfig whole;
  whole.subset = UnitIntervalSet::unit();
  auto broken = capture([&](auto& o, auto& e) { return cmd_derive_sp(inst("wood.sep"), whole, o, e); });
  EXPECT_EQ(broken.code, kViolations);
  EXPECT_NE(broken.out.find("Statprop02Violation"), std::string::npos);

  RunConfig near;
  near.epsilon = Rational(1, 10);
  auto eps = capture([&](auto& o, auto& e) { return cmd_derive_sp(inst("wood.sep"), near, o, e); });
  EXPECT_EQ(eps.code, kOk);

  near.epsilon = Rational(3, 2);
  auto bad = capture([&](auto& o, auto& e) { return cmd_derive_sp(inst("wood.sep"), near, o, e); });
  EXPECT_EQ(bad.code, kInputError);
}

TEST(CliSimulate, ExitCodesAndReproducibleCsv) {
  RunConfig config;
  config.sessions = 40;
  config.trials = 20000;
  config.delta = 0.02;
  config.seed = 3;
  config.format = Format::csv;
  auto a = capture([&](auto& o, auto& e) { return cmd_simulate(inst("two_point.sep"), "prod(a, b)", "p", config, o, e); });
  auto b = capture([&](auto& o, auto& e) { return cmd_simulate(inst("two_point.sep"), "prod(a, b)", "p", config, o, e); });
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("session,factor,context,final_frequency\n", 0), 0u);

  config.csv_path = (std::filesystem::temp_directory_path() / "subprob_test_sim.csv").string();
  config.format = Format::text;
  auto c = capture([&](auto& o, auto& e) { return cmd_simulate(inst("two_point.sep"), "prod(a, b)", "p", config, o, e); });
  EXPECT_EQ(c.code, kOk);
  EXPECT_EQ(read_text_file(config.csv_path), a.out);
  std::filesystem::remove(config.csv_path);
  config.csv_path.clear();

  auto unknown = capture([&](auto& o, auto& e) { return cmd_simulate(inst("two_point.sep"), "zz", "p", config, o, e); });
  EXPECT_EQ(unknown.code, kInputError);
  auto bad_state = capture([&](auto& o, auto& e) { return cmd_simulate(inst("two_point.sep"), "a", "q", config, o, e); });
  EXPECT_EQ(bad_state.code, kInputError);
  auto bad_term = capture([&](auto& o, auto& e) { return cmd_simulate(inst("two_point.sep"), "prod(", "p", config, o, e); });
  EXPECT_EQ(bad_term.code, kInputError);

  // Too few trials to land within delta of the target.
  config.trials = 5;
  config.delta = 0.001;
  auto loose = capture([&](auto& o, auto& e) { return cmd_simulate(inst("two_point.sep"), "a", "p", config, o, e); });
  EXPECT_EQ(loose.code, kViolations);
}

TEST(CliSimulate, WoodProductIsCertain) {
  RunConfig config;
  config.format = Format::csv;
  auto run = capture([&](auto& o, auto& e) { return cmd_simulate(inst("wood.sep"), "prod(burn,float)", "p", config, o, e); });
  EXPECT_EQ(run.code, kOk);
  std::istringstream rows(run.out);
  std::string line;
  std::getline(rows, line);
  std::size_t n = 0;
  while (std::getline(rows, line)) {
    ++n;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "1") << line;
  }
  EXPECT_EQ(n, config.sessions);
}

TEST(CliSimulate, UnperformableExperimentIsAViolation) {
  auto path = (std::filesystem::temp_directory_path() / "subprob_test_empty.sep").string();
  {
    std::ofstream f(path);
    f << "states: p\nexperiments: a\nmu a p = empty\n";
  }
  RunConfig config;
  config.sessions = 3;
  config.trials = 10;
  auto run = capture([&](auto& o, auto& e) { return cmd_simulate(path, "a", "p", config, o, e); });
  EXPECT_EQ(run.code, kViolations);
  EXPECT_NE(run.err.find("cannot be performed"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(CliDeriveSp, TrivialInstanceHasTwoElements) {
  auto run = capture([](auto& o, auto& e) { return cmd_derive_sp(inst("trivial.sep"), RunConfig{}, o, e); });
  EXPECT_EQ(run.code, kOk);
  EXPECT_NE(run.out.find("properties: 2"), std::string::npos);
}

TEST(CliCheckMorphism, ExitCodes) {
  auto ok = capture([](auto& o, auto& e) {
    return cmd_check_morphism(inst("pair.sep"), inst("piece.sep"), inst("first_piece.morph"), o, e);
  });
  EXPECT_EQ(ok.code, kOk);
  EXPECT_NE(ok.out.find("SEP morphism: OK"), std::string::npos);
  EXPECT_NE(ok.out.find("SP morphism: OK"), std::string::npos);

  auto wrong = capture([](auto& o, auto& e) {
    return cmd_check_morphism(inst("pair.sep"), inst("piece.sep"), inst("wrong_piece.morph"), o, e);
  });
  EXPECT_EQ(wrong.code, kViolations);
  EXPECT_NE(wrong.out.find("CovarianceViolation(burn, first_wet)"), std::string::npos);

  auto identity = capture([](auto& o, auto& e) {
    return cmd_check_morphism(inst("wood.sep"), inst("wood.sep"), inst("wood_identity.morph"), o, e);
  });
  EXPECT_EQ(identity.code, kOk);

  auto invalid = capture([](auto& o, auto& e) {
    return cmd_check_morphism(inst("missing_entry.sep"), inst("piece.sep"), inst("first_piece.morph"), o, e);
  });
  EXPECT_EQ(invalid.code, kInputError);
}

}  // namespace
}  // namespace subprob::cli
