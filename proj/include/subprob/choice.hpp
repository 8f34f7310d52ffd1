#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "subprob/experiment.hpp"
#include "subprob/interval_set.hpp"
#include "subprob/sep.hpp"

namespace subprob {

// ---------------------------------------------------------------------------
// Standard probability: an act of choice as a weight vector.

// Probabilities x_i of choosing factor i. Each in [0,1], summing to exactly 1.
class ChoiceWeights {
 public:
  // std::domain_error if the vector is empty, a weight leaves [0,1] or the
  // sum differs from 1.
  explicit ChoiceWeights(std::vector<Rational> weights);

  const std::vector<Rational>& values() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  bool all_positive() const;

 private:
  std::vector<Rational> weights_;
};

// sum_i x_i * probs_i. std::domain_error on length mismatch or a prob
// outside [0,1].
Rational convex_combination(const ChoiceWeights& weights, std::span<const Rational> probs);

// Result of searching every probability vector on a grid for a witness that
// "sum x_i mu_i = 1 implies mu_j = 1 for all j" fails.
struct Prop1Report {
  bool all_weights_positive = false;
  // Every grid vector with weighted sum 1 but some component below 1, in
  // lexicographic order of the grid.
  std::vector<std::vector<Rational>> counterexamples;
  std::size_t vectors_checked = 0;

  bool implication_holds() const { return counterexamples.empty(); }
  // The implication holds exactly when every weight is positive.
  bool confirmed() const { return implication_holds() == all_weights_positive; }
};

// grid_step must be 1/k for a positive integer k (std::domain_error
// otherwise). Visits (k+1)^n vectors.
Prop1Report prop1_diagnostic(const ChoiceWeights& weights, const Rational& grid_step);

// Convex hull of the union: the product-experiment probabilities reachable
// by some identifiable act of choice. std::domain_error if the list or any
// member is empty.
UnitIntervalSet attainable_hull(std::span<const UnitIntervalSet> probs);

// ---------------------------------------------------------------------------
// Simulation of the product experiment procedure.
//
// Each session chooses one factor, draws a hidden context c from that
// factor's subset probability, and repeats a yes/no trial with yes
// probability c. The limit of relative frequency is c; collecting final
// frequencies over many sessions recovers mu(prod F, p).
//
// Randomness: session i of a run with master seed s is driven by a
// std::mt19937_64 seeded with session_seed(s, i). Uniform variates are the
// top 53 bits of a draw scaled by 2^-53, so results are bit-identical across
// platforms, thread counts and execution order.

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimulationPolicy {
  enum class ContextSampler {
    // Pick a component uniformly, then a point uniformly inside it.
    uniform_component_then_uniform,
  };

  std::uint64_t seed = 0;
  // Empty: uniform over factors. Otherwise one weight per factor.
  std::optional<ChoiceWeights> factor_weights;
  ContextSampler sampler = ContextSampler::uniform_component_then_uniform;
  // Worker threads for multi-session runs; results do not depend on it.
  unsigned threads = 1;
};

// SplitMix64 finalizer of seed + (index + 1) * 0x9E3779B97F4A7C15.
std::uint64_t session_seed(std::uint64_t master_seed, std::uint64_t session_index);

struct FrequencySequence {
  std::uint64_t trials = 0;
  // yes_counts[k] = number of yes outcomes among trials 0..k
  std::vector<std::uint64_t> yes_counts;

  double frequency_at(std::size_t k) const;
  double final_frequency() const;
  std::vector<double> frequencies() const;
};

struct SessionResult {
  std::size_t factor_index = 0;
  ExperimentTerm factor = ExperimentTerm::base(std::string(kUnitSymbol));
  double context = 0.0;
  FrequencySequence sequence;
};

// One session (index 0 of the policy seed). Preconditions: factors
// non-empty, n_trials >= 1 (std::domain_error). SimulationError if the
// chosen factor has an empty subset probability in `state`.
SessionResult simulate_session(const SepSystem& sys, std::span<const ExperimentTerm> factors,
                               const std::string& state, const SimulationPolicy& policy,
                               std::uint64_t n_trials, std::uint64_t session_index = 0);

struct SessionSummary {
  std::uint64_t session = 0;
  std::size_t factor_index = 0;
  std::string factor;
  double context = 0.0;
  double final_frequency = 0.0;
};

struct ComponentCoverage {
  Interval component;
  // Some final frequency within delta of the component.
  bool covered = false;
  // Among frequencies within delta of the component: min <= lo + delta and
  // max >= hi - delta.
  bool span_covered = false;
};

struct RecoveryReport {
  UnitIntervalSet target;  // mu(prod F, p)
  double delta = 0.0;
  std::vector<SessionSummary> sessions;
  // Sessions whose final frequency is farther than delta from the target.
  std::vector<std::uint64_t> unsound_sessions;
  std::vector<ComponentCoverage> components;

  bool soundness() const { return unsound_sessions.empty(); }
  bool coverage() const;
  bool span_coverage() const;
};

// Runs n_sessions sessions and checks the final frequencies against
// mu(prod F, p). std::domain_error for delta <= 0 or zero counts.
RecoveryReport recover_subset(const SepSystem& sys, std::span<const ExperimentTerm> factors,
                              const std::string& state, const SimulationPolicy& policy,
                              std::uint64_t n_sessions, std::uint64_t n_trials, double delta);

// Distance from x to the nearest point of v (+infinity for the empty set).
double distance_to(const UnitIntervalSet& v, double x);

// "session,factor,context,final_frequency" plus one row per session.
std::string recovery_csv(const RecoveryReport& report);
std::string recovery_text(const RecoveryReport& report);

}  // namespace subprob
