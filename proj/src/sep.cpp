#include "subprob/sep.hpp"

#include <algorithm>
#include <set>

namespace subprob {

SepSystem::SepSystem(std::vector<std::string> states, std::vector<std::string> experiments,
                     SubsetProbabilityTable table)
    : states_(std::move(states)), experiments_(std::move(experiments)), table_(std::move(table)) {}

bool SepSystem::has_state(std::string_view id) const {
  return std::find(states_.begin(), states_.end(), id) != states_.end();
}

bool SepSystem::has_experiment(std::string_view id) const {
  return std::find(experiments_.begin(), experiments_.end(), id) != experiments_.end();
}

std::size_t SepSystem::state_index(std::string_view id) const {
  auto it = std::find(states_.begin(), states_.end(), id);
  if (it == states_.end()) throw LookupError("unknown state '" + std::string(id) + "'");
  return static_cast<std::size_t>(it - states_.begin());
}

const UnitIntervalSet& SepSystem::entry(const std::string& experiment, const std::string& state) const {
  if (!has_experiment(experiment)) throw LookupError("unknown experiment '" + experiment + "'");
  if (!has_state(state)) throw LookupError("unknown state '" + state + "'");
  auto it = table_.find({experiment, state});
  if (it == table_.end()) throw LookupError("no entry for mu(" + experiment + ", " + state + ")");
  return it->second;
}

UnitIntervalSet mu_eval(const SepSystem& sys, const ExperimentTerm& t, const std::string& state) {
  UnitIntervalSet out;
  for (const auto& lit : t.literals()) {
    const auto& value = sys.entry(lit.symbol, state);
    out = unite(out, lit.inverted ? one_minus(value) : value);
  }
  return out;
}

bool holds_within(const SepSystem& sys, const ExperimentTerm& t, const std::string& state,
                  const UnitIntervalSet& a) {
  return is_subset(mu_eval(sys, t, state), a);
}

bool is_certain(const SepSystem& sys, const ExperimentTerm& t, const std::string& state) {
  return holds_within(sys, t, state, UnitIntervalSet::point(1));
}

bool is_performable(const SepSystem& sys, const ExperimentTerm& t, const std::string& state) {
  return !mu_eval(sys, t, state).is_empty();
}

bool is_close_to_certain(const SepSystem& sys, const ExperimentTerm& t, const std::string& state,
                         const Rational& epsilon) {
  if (epsilon < 0 || epsilon > 1) {
    throw std::domain_error("epsilon " + format_rational(epsilon) + " outside [0,1]");
  }
  return holds_within(sys, t, state, UnitIntervalSet::closed(1 - epsilon, 1));
}

TransferReport transfer_check(const SepSystem& sys, std::span<const ExperimentTerm> factors,
                              const std::string& state, const UnitIntervalSet& a) {
  TransferReport report;
  report.product_within = holds_within(sys, product(factors), state, a);
  report.all_factors_within = std::all_of(factors.begin(), factors.end(), [&](const ExperimentTerm& f) {
    return holds_within(sys, f, state, a);
  });
  report.agree = report.product_within == report.all_factors_within;
  return report;
}

std::string_view kind_name(SepViolation::Kind kind) {
  switch (kind) {
    case SepViolation::Kind::no_states: return "NoStates";
    case SepViolation::Kind::duplicate_state: return "DuplicateState";
    case SepViolation::Kind::duplicate_experiment: return "DuplicateExperiment";
    case SepViolation::Kind::invalid_identifier: return "InvalidIdentifier";
    case SepViolation::Kind::missing_unit: return "MissingUnit";
    case SepViolation::Kind::unknown_experiment: return "UnknownExperiment";
    case SepViolation::Kind::unknown_state: return "UnknownState";
    case SepViolation::Kind::missing_entry: return "MissingEntry";
    case SepViolation::Kind::unit_axiom: return "UnitAxiomViolation";
  }
  return "?";
}

std::string SepViolation::describe() const {
  std::string out(kind_name(kind));
  if (!experiment.empty() && !state.empty()) return out + "(" + experiment + ", " + state + ")";
  if (!experiment.empty()) return out + "(" + experiment + ")";
  if (!state.empty()) return out + "(" + state + ")";
  return out;
}

std::vector<SepViolation> validate_sep(const SepSystem& sys) {
  using K = SepViolation::Kind;
  std::vector<SepViolation> out;
  if (sys.states().empty()) out.push_back({K::no_states, {}, {}});

  std::set<std::string> seen;
  for (const auto& s : sys.states()) {
    if (!is_valid_symbol(s)) out.push_back({K::invalid_identifier, {}, s});
    if (!seen.insert(s).second) out.push_back({K::duplicate_state, {}, s});
  }
  seen.clear();
  for (const auto& e : sys.experiments()) {
    if (!is_valid_symbol(e)) out.push_back({K::invalid_identifier, e, {}});
    if (!seen.insert(e).second) out.push_back({K::duplicate_experiment, e, {}});
  }
  if (!sys.has_experiment(kUnitSymbol)) out.push_back({K::missing_unit, std::string(kUnitSymbol), {}});

  for (const auto& [key, value] : sys.table()) {
    if (!sys.has_experiment(key.first)) out.push_back({K::unknown_experiment, key.first, key.second});
    if (!sys.has_state(key.second)) out.push_back({K::unknown_state, key.first, key.second});
  }

  const auto unit = UnitIntervalSet::point(1);
  for (const auto& e : sys.experiments()) {
    for (const auto& s : sys.states()) {
      auto it = sys.table().find({e, s});
      if (it == sys.table().end()) {
        out.push_back({K::missing_entry, e, s});
      } else if (e == kUnitSymbol && it->second != unit) {
        out.push_back({K::unit_axiom, {}, s});
      }
    }
  }
  return out;
}

}  // namespace subprob
