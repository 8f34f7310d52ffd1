// subprob: validate SEP instances, derive property lattices, simulate subset
// probabilities and check morphisms.
//
// Exit codes: 0 ok, 1 violations found, 2 input error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "subprob/cli.hpp"

namespace {

using subprob::cli::Format;
using subprob::cli::RunConfig;

bool parse_number(const std::string& flag, const std::string& text, subprob::Rational& out) {
  try {
    out = subprob::parse_rational(text);
    return true;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << flag << ": " << e.what() << '\n';
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset probability calculus: SEP instances, property lattices, simulation"};
  app.require_subcommand(1);

  RunConfig config;
  std::string delta_text = "1/100";
  std::string epsilon_text;
  std::string subset_text;
  std::string format_text = "text";

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"text", "csv", "dot"}));
  };

  std::string path;
  auto* validate = app.add_subcommand("validate", "Check an instance file against the SEP axioms");
  validate->add_option("instance", path, "Instance file (.sep)")->required();

  auto* derive = app.add_subcommand("derive-sp", "Derive the state property system and its lattice");
  derive->add_option("instance", path, "Instance file (.sep)")->required();
  derive->add_option("--dot", config.dot_path, "Write the Hasse diagram as DOT");
  derive->add_option("--epsilon", epsilon_text, "Use [1-epsilon, 1] as the certainty target");
  derive->add_option("--subset", subset_text, "Use an arbitrary set as the certainty target, e.g. \"[9/10, 1]\"");
  add_format(derive);

  std::string term;
  std::string state;
  auto* simulate = app.add_subcommand("simulate", "Recover mu(term, state) from simulated relative frequencies");
  simulate->add_option("instance", path, "Instance file (.sep)")->required();
  simulate->add_option("term", term, "Experiment term, e.g. \"prod(burn, float)\"")->required();
  simulate->add_option("state", state, "State id")->required();
  simulate->add_option("--seed", config.seed, "Master seed");
  simulate->add_option("--sessions", config.sessions, "Number of sessions")->check(CLI::PositiveNumber);
  simulate->add_option("--trials", config.trials, "Trials per session")->check(CLI::PositiveNumber);
  simulate->add_option("--delta", delta_text, "Tolerance for the soundness and coverage checks");
  simulate->add_option("--threads", config.threads, "Worker threads (results do not depend on it)");
  simulate->add_option("--csv", config.csv_path, "Write per-session results as CSV");
  add_format(simulate);

  std::string src_path;
  std::string dst_path;
  std::string morphism_path;
  auto* check = app.add_subcommand("check-morphism", "Validate a SEP morphism and its derived SP morphism");
  check->add_option("source", src_path, "Instance of the larger entity (domain of m)")->required();
  check->add_option("target", dst_path, "Instance of the subentity (codomain of m)")->required();
  check->add_option("morphism", morphism_path, "Morphism file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : subprob::cli::kInputError;
  }

  config.format = format_text == "csv" ? Format::csv : format_text == "dot" ? Format::dot : Format::text;

  if (validate->parsed()) return subprob::cli::cmd_validate(path, std::cout, std::cerr);

  if (derive->parsed()) {
    if (!epsilon_text.empty()) {
      subprob::Rational eps;
      if (!parse_number("--epsilon", epsilon_text, eps)) return subprob::cli::kInputError;
      config.epsilon = eps;
    }
    if (!subset_text.empty()) {
      try {
        config.subset = subprob::parse_interval_set(subset_text);
      } catch (const subprob::ParseError& e) {
        std::cerr << "error: --subset: " << e.what() << '\n';
        return subprob::cli::kInputError;
      }
    }
    return subprob::cli::cmd_derive_sp(path, config, std::cout, std::cerr);
  }

  if (simulate->parsed()) {
    subprob::Rational delta;
    if (!parse_number("--delta", delta_text, delta)) return subprob::cli::kInputError;
    config.delta = subprob::to_double(delta);
    return subprob::cli::cmd_simulate(path, term, state, config, std::cout, std::cerr);
  }

  return subprob::cli::cmd_check_morphism(src_path, dst_path, morphism_path, std::cout, std::cerr);
}
