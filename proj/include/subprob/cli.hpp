#pragma once

// Command implementations behind the `subprob` tool. Each returns the
// process exit code and writes its report to `out`, diagnostics to `err`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "subprob/interval_set.hpp"
#include "subprob/rational.hpp"

namespace subprob::cli {

enum ExitCode : int {
  kOk = 0,
  kViolations = 1,
  kInputError = 2,
};

enum class Format { text, csv, dot };

struct RunConfig {
  std::uint64_t seed = 0;
  std::uint64_t sessions = 200;
  std::uint64_t trials = 100000;
  double delta = 0.01;
  // Certainty target [1 - epsilon, 1] for derive-sp.
  std::optional<Rational> epsilon;
  // Arbitrary certainty target for derive-sp; overrides epsilon.
  std::optional<UnitIntervalSet> subset;
  std::string dot_path;
  std::string csv_path;
  Format format = Format::text;
  unsigned threads = 1;
};

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_derive_sp(const std::string& path, const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& path, const std::string& term, const std::string& state,
                 const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_check_morphism(const std::string& src_path, const std::string& dst_path, const std::string& morphism_path,
                       std::ostream& out, std::ostream& err);

}  // namespace subprob::cli
