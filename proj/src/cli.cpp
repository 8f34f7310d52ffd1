#include "subprob/cli.hpp"

#include <fstream>
#include <ostream>

#include "subprob/category.hpp"
#include "subprob/choice.hpp"
#include "subprob/property_system.hpp"
#include "subprob/sep.hpp"

namespace subprob::cli {

namespace {

// Loads and validates an instance. On failure writes the diagnostic and
// returns the exit code through `code`.
std::optional<SepSystem> load_checked(const std::string& path, std::ostream& out, std::ostream& err, int& code,
                                      int violation_code) {
  SepSystem sys;
  try {
    sys = load_sep(path);
  } catch (const ParseError& e) {
    err << "error: " << path << ":" << e.what() << '\n';
    code = kInputError;
    return std::nullopt;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kInputError;
    return std::nullopt;
  }
  auto violations = validate_sep(sys);
  if (!violations.empty()) {
    out << path << ": " << violations.size() << " violation(s)\n";
    for (const auto& v : violations) out << "  " << v.describe() << '\n';
    code = violation_code;
    return std::nullopt;
  }
  return sys;
}

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  file << content;
  return true;
}

}  // namespace

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto sys = load_checked(path, out, err, code, kViolations);
  if (!sys) return code;
  out << path << ": OK (" << sys->states().size() << " states, " << sys->experiments().size()
      << " experiments)\n";
  return kOk;
}

int cmd_derive_sp(const std::string& path, const RunConfig& config, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto sys = load_checked(path, out, err, code, kViolations);
  if (!sys) return code;

  UnitIntervalSet target = UnitIntervalSet::point(1);
  if (config.subset) {
    target = *config.subset;
  } else if (config.epsilon) {
    if (*config.epsilon < 0 || *config.epsilon > 1) {
      err << "error: --epsilon must lie in [0,1]\n";
      return kInputError;
    }
    target = UnitIntervalSet::closed(1 - *config.epsilon, 1);
  }

  StatePropertySystem sp;
  try {
    sp = derive_sp_general(*sys, target);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kViolations;
  }

  if (config.format == Format::dot) {
    out << lattice_dot(sp);
  } else {
    out << sp_text(sp);
  }
  if (!config.dot_path.empty() && !write_file(config.dot_path, lattice_dot(sp), err)) return kInputError;

  auto violations = validate_sp(sp);
  std::ostream& report = config.format == Format::dot ? err : out;
  if (violations.empty()) {
    report << "SP axioms: OK\n";
    return kOk;
  }
  report << "SP axioms: " << violations.size() << " violation(s)\n";
  for (const auto& v : violations) report << "  " << kind_name(v.kind) << ": " << v.message << '\n';
  return kViolations;
}

int cmd_simulate(const std::string& path, const std::string& term, const std::string& state,
                 const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.sessions == 0 || config.trials == 0 || !(config.delta > 0)) {
    err << "error: sessions and trials must be at least 1 and delta positive\n";
    return kInputError;
  }
  int code = kOk;
  auto sys = load_checked(path, out, err, code, kViolations);
  if (!sys) return code;

  ExperimentTerm experiment = ExperimentTerm::base(std::string(kUnitSymbol));
  try {
    experiment = parse_term(term);
  } catch (const ParseError& e) {
    err << "error: experiment term: " << e.what() << '\n';
    return kInputError;
  }
  for (const auto& lit : experiment.literals()) {
    if (!sys->has_experiment(lit.symbol)) {
      err << "error: unknown experiment '" << lit.symbol << "'\n";
      return kInputError;
    }
  }
  if (!sys->has_state(state)) {
    err << "error: unknown state '" << state << "'\n";
    return kInputError;
  }

  std::vector<ExperimentTerm> factors;
  for (const auto& lit : experiment.literals()) factors.push_back(literal_term(lit));
  SimulationPolicy policy;
  policy.seed = config.seed;
  policy.threads = config.threads;

  RecoveryReport report;
  try {
    report = recover_subset(*sys, factors, state, policy, config.sessions, config.trials, config.delta);
  } catch (const SimulationError& e) {
    err << "error: " << e.what() << '\n';
    return kViolations;
  }

  const std::string csv = recovery_csv(report);
  if (config.format == Format::csv) {
    out << csv;
  } else {
    out << "experiment: " << experiment << "  state: " << state << "  seed: " << config.seed
        << "  trials: " << config.trials << '\n'
        << recovery_text(report);
  }
  if (!config.csv_path.empty() && !write_file(config.csv_path, csv, err)) return kInputError;
  return report.soundness() && report.coverage() ? kOk : kViolations;
}

int cmd_check_morphism(const std::string& src_path, const std::string& dst_path, const std::string& morphism_path,
                       std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto src = load_checked(src_path, out, err, code, kInputError);
  if (!src) return code;
  auto dst = load_checked(dst_path, out, err, code, kInputError);
  if (!dst) return code;
  SepMorphism phi;
  try {
    phi = load_morphism(morphism_path);
  } catch (const ParseError& e) {
    err << "error: " << morphism_path << ":" << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  auto sep_violations = validate_sep_morphism(*src, *dst, phi);
  if (!sep_violations.empty()) {
    out << "SEP morphism: " << sep_violations.size() << " violation(s)\n";
    for (const auto& v : sep_violations) out << "  " << v.describe() << '\n';
    return kViolations;
  }
  out << "SEP morphism: OK\n";

  auto sp_src = derive_sp(*src);
  auto sp_dst = derive_sp(*dst);
  SpMorphism psi;
  try {
    psi = derive_sp_morphism(phi, sp_src, sp_dst);
  } catch (const MorphismError& e) {
    out << "SP morphism: " << e.what() << '\n';
    return kViolations;
  }
  for (std::size_t a = 0; a < psi.element_map.size(); ++a) {
    out << "  n(" << sp_dst.lattice.label(a) << ") = " << sp_src.lattice.label(psi.element_map[a]) << '\n';
  }
  auto sp_violations = validate_sp_morphism(sp_src, sp_dst, psi);
  if (!sp_violations.empty()) {
    out << "SP morphism: " << sp_violations.size() << " violation(s)\n";
    for (const auto& v : sp_violations) out << "  " << v.message << '\n';
    return kViolations;
  }
  out << "SP morphism: OK\n";
  return kOk;
}

}  // namespace subprob::cli
