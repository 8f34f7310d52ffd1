#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subprob/experiment.hpp"
#include "subprob/interval_set.hpp"

namespace subprob {

// Unknown state or experiment symbol, or a table entry that is not there.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// (experiment symbol, state id)
using TableKey = std::pair<std::string, std::string>;
using SubsetProbabilityTable = std::map<TableKey, UnitIntervalSet>;

// A state experiment probability system over a finite state set and a
// finite set of base experiments. The subset probability is tabulated on
// base experiments only; products and inverses are evaluated by mu_eval.
//
// Construction does not enforce the axioms, so malformed instances can be
// held and reported on; see validate_sep.
class SepSystem {
 public:
  SepSystem() = default;
  SepSystem(std::vector<std::string> states, std::vector<std::string> experiments, SubsetProbabilityTable table);

  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& experiments() const noexcept { return experiments_; }
  const SubsetProbabilityTable& table() const noexcept { return table_; }

  bool has_state(std::string_view id) const;
  bool has_experiment(std::string_view id) const;
  // Position of the state in states(); LookupError if absent.
  std::size_t state_index(std::string_view id) const;

  // Throws LookupError for an unknown symbol or state, or a missing entry.
  const UnitIntervalSet& entry(const std::string& experiment, const std::string& state) const;

  friend bool operator==(const SepSystem&, const SepSystem&) = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> experiments_;
  SubsetProbabilityTable table_;
};

// mu(t, p): base entries from the table, inverse by 1 - V, product by union.
UnitIntervalSet mu_eval(const SepSystem& sys, const ExperimentTerm& t, const std::string& state);

// mu(t, p) is a subset of A. The common core of every certainty predicate.
bool holds_within(const SepSystem& sys, const ExperimentTerm& t, const std::string& state,
                  const UnitIntervalSet& a);
// mu(t, p) is a subset of {1}. True for an unperformable experiment (empty mu).
bool is_certain(const SepSystem& sys, const ExperimentTerm& t, const std::string& state);
// mu(t, p) is non-empty.
bool is_performable(const SepSystem& sys, const ExperimentTerm& t, const std::string& state);
// mu(t, p) is a subset of [1 - epsilon, 1]. std::domain_error unless 0 <= epsilon <= 1.
bool is_close_to_certain(const SepSystem& sys, const ExperimentTerm& t, const std::string& state,
                         const Rational& epsilon);

struct TransferReport {
  bool product_within = false;    // mu(prod F, p) within A
  bool all_factors_within = false;  // mu(f, p) within A for every f in F
  bool agree = false;
};

// Evaluates both sides of "product within A iff every factor within A".
// They always agree; the report exists as a runtime self-check.
// std::domain_error on an empty factor family.
TransferReport transfer_check(const SepSystem& sys, std::span<const ExperimentTerm> factors,
                              const std::string& state, const UnitIntervalSet& a);

struct SepViolation {
  enum class Kind {
    no_states,
    duplicate_state,
    duplicate_experiment,
    invalid_identifier,
    missing_unit,
    unknown_experiment,  // table row for an undeclared experiment
    unknown_state,       // table row for an undeclared state
    missing_entry,
    unit_axiom,          // mu(tau, p) != {1}
  };

  Kind kind;
  std::string experiment;
  std::string state;

  std::string describe() const;
  friend bool operator==(const SepViolation&, const SepViolation&) = default;
};

std::string_view kind_name(SepViolation::Kind kind);

// Empty iff the table is total on experiments x states, ids are sane and
// mu(tau, p) = {1} for every p. Entries are UnitIntervalSets and therefore
// canonical by construction.
std::vector<SepViolation> validate_sep(const SepSystem& sys);

// Instance file format, one directive per line, '#' starts a comment:
//
//   states: p1, p2
//   experiments: tau, a, b
//   mu a p1 = {1}
//   mu b p1 = [3/5, 7/10] u {1/4}
//
// The unit symbol is added to the experiment list if absent, and missing
// tau rows are filled with {1}. Duplicate or malformed lines raise
// ParseError with the file line and column.
SepSystem parse_sep(std::string_view text);
SepSystem load_sep(const std::filesystem::path& path);
// Omits tau rows equal to {1}. parse_sep(format_sep(s)) == s for any
// system whose tau rows are all present.
std::string format_sep(const SepSystem& sys);
void save_sep(const SepSystem& sys, const std::filesystem::path& path);

// Reads a whole file; std::runtime_error if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace subprob
