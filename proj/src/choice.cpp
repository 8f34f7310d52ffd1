#include "subprob/choice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace subprob {

ChoiceWeights::ChoiceWeights(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::domain_error("choice weights must be non-empty");
  Rational sum = 0;
  for (const auto& w : weights_) {
    if (w < 0 || w > 1) throw std::domain_error("choice weight " + format_rational(w) + " outside [0,1]");
    sum += w;
  }
  if (sum != 1) throw std::domain_error("choice weights sum to " + format_rational(sum) + ", not 1");
}

bool ChoiceWeights::all_positive() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w > 0; });
}

Rational convex_combination(const ChoiceWeights& weights, std::span<const Rational> probs) {
  if (probs.size() != weights.size()) {
    throw std::domain_error("expected " + std::to_string(weights.size()) + " probabilities, got " +
                            std::to_string(probs.size()));
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < 0 || probs[i] > 1) {
      throw std::domain_error("probability " + format_rational(probs[i]) + " outside [0,1]");
    }
    sum += weights.values()[i] * probs[i];
  }
  return sum;
}

Prop1Report prop1_diagnostic(const ChoiceWeights& weights, const Rational& grid_step) {
  if (grid_step <= 0 || grid_step > 1) throw std::domain_error("grid step must lie in (0,1]");
  Rational steps = 1 / grid_step;
  if (boost::multiprecision::denominator(steps) != 1) throw std::domain_error("grid step must divide 1");
  const auto k = boost::multiprecision::numerator(steps).convert_to<std::size_t>();

  Prop1Report report;
  report.all_weights_positive = weights.all_positive();
  const std::size_t n = weights.size();
  std::vector<std::size_t> digits(n, 0);
  std::vector<Rational> probs(n, Rational(0));
  while (true) {
    ++report.vectors_checked;
    if (convex_combination(weights, probs) == 1 &&
        std::any_of(probs.begin(), probs.end(), [](const Rational& m) { return m != 1; })) {
      report.counterexamples.push_back(probs);
    }
    // Odometer, last component fastest.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (digits[i] < k) {
        ++digits[i];
        probs[i] = Rational(digits[i]) * grid_step;
        break;
      }
      digits[i] = 0;
      probs[i] = 0;
      if (i == 0) return report;
    }
  }
}

UnitIntervalSet attainable_hull(std::span<const UnitIntervalSet> probs) {
  if (probs.empty()) throw std::domain_error("attainable hull of no experiments");
  UnitIntervalSet all;
  for (const auto& v : probs) {
    if (v.is_empty()) throw std::domain_error("attainable hull with an unperformable experiment");
    all = unite(all, v);
  }
  return convex_hull(all);
}

std::uint64_t session_seed(std::uint64_t master_seed, std::uint64_t session_index) {
  std::uint64_t z = master_seed + (session_index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double FrequencySequence::frequency_at(std::size_t k) const {
  return static_cast<double>(yes_counts.at(k)) / static_cast<double>(k + 1);
}

double FrequencySequence::final_frequency() const {
  if (yes_counts.empty()) throw std::domain_error("empty frequency sequence");
  return frequency_at(yes_counts.size() - 1);
}

std::vector<double> FrequencySequence::frequencies() const {
  std::vector<double> out(yes_counts.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = frequency_at(k);
  return out;
}

namespace {

class SessionRng {
 public:
  explicit SessionRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::size_t index_below(std::size_t n) {
    return std::min(static_cast<std::size_t>(uniform() * static_cast<double>(n)), n - 1);
  }

 private:
  std::mt19937_64 engine_;
};

struct SessionCore {
  std::size_t factor_index = 0;
  double context = 0.0;
  std::uint64_t yes = 0;
};

std::size_t choose_factor(SessionRng& rng, std::size_t n, const SimulationPolicy& policy) {
  if (!policy.factor_weights) return rng.index_below(n);
  const auto& w = policy.factor_weights->values();
  if (w.size() != n) throw std::domain_error("factor weights do not match the number of factors");
  double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] > 0) last_positive = i;
    cumulative += to_double(w[i]);
    if (u < cumulative && w[i] > 0) return i;
  }
  return last_positive;
}

double sample_context(SessionRng& rng, const UnitIntervalSet& mu) {
  const auto& parts = mu.components();
  const auto& part = parts[rng.index_below(parts.size())];
  double lo = to_double(part.lo);
  if (part.lo == part.hi) return lo;
  double hi = to_double(part.hi);
  return std::min(hi, lo + rng.uniform() * (hi - lo));
}

// Runs one session; when `counts` is non-null the prefix yes-counts are recorded.
SessionCore run_session(const SepSystem& sys, std::span<const ExperimentTerm> factors, const std::string& state,
                        const SimulationPolicy& policy, std::uint64_t n_trials, std::uint64_t index,
                        std::vector<std::uint64_t>* counts) {
  SessionRng rng(session_seed(policy.seed, index));
  SessionCore core;
  core.factor_index = choose_factor(rng, factors.size(), policy);
  const auto& factor = factors[core.factor_index];
  UnitIntervalSet mu = mu_eval(sys, factor, state);
  if (mu.is_empty()) {
    throw SimulationError("experiment " + to_string(factor) + " cannot be performed in state " + state +
                          " (empty subset probability)");
  }
  core.context = sample_context(rng, mu);
  if (counts) counts->resize(n_trials);
  for (std::uint64_t k = 0; k < n_trials; ++k) {
    if (rng.uniform() < core.context) ++core.yes;
    if (counts) (*counts)[k] = core.yes;
  }
  return core;
}

void check_simulation_args(std::span<const ExperimentTerm> factors, std::uint64_t n_trials) {
  if (factors.empty()) throw std::domain_error("simulation needs at least one factor");
  if (n_trials == 0) throw std::domain_error("simulation needs at least one trial");
}

double interval_distance(const Interval& part, double x) {
  double lo = to_double(part.lo);
  double hi = to_double(part.hi);
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

// Six significant digits for human-readable summaries.
std::string format_short(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
  return std::string(buf, end);
}

}  // namespace

SessionResult simulate_session(const SepSystem& sys, std::span<const ExperimentTerm> factors,
                               const std::string& state, const SimulationPolicy& policy,
                               std::uint64_t n_trials, std::uint64_t session_index) {
  check_simulation_args(factors, n_trials);
  SessionResult result;
  auto core = run_session(sys, factors, state, policy, n_trials, session_index, &result.sequence.yes_counts);
  result.factor_index = core.factor_index;
  result.factor = factors[core.factor_index];
  result.context = core.context;
  result.sequence.trials = n_trials;
  return result;
}

double distance_to(const UnitIntervalSet& v, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& part : v.components()) best = std::min(best, interval_distance(part, x));
  return best;
}

bool RecoveryReport::coverage() const {
  return std::all_of(components.begin(), components.end(), [](const ComponentCoverage& c) { return c.covered; });
}

bool RecoveryReport::span_coverage() const {
  return std::all_of(components.begin(), components.end(),
                     [](const ComponentCoverage& c) { return c.span_covered; });
}

RecoveryReport recover_subset(const SepSystem& sys, std::span<const ExperimentTerm> factors,
                              const std::string& state, const SimulationPolicy& policy,
                              std::uint64_t n_sessions, std::uint64_t n_trials, double delta) {
  check_simulation_args(factors, n_trials);
  if (n_sessions == 0) throw std::domain_error("recovery needs at least one session");
  if (!(delta > 0)) throw std::domain_error("delta must be positive");

  RecoveryReport report;
  report.target = mu_eval(sys, product(factors), state);
  report.delta = delta;
  report.sessions.resize(n_sessions);

  auto run_range = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t i = first; i < n_sessions; i += stride) {
      auto core = run_session(sys, factors, state, policy, n_trials, i, nullptr);
      auto& s = report.sessions[i];
      s.session = i;
      s.factor_index = core.factor_index;
      s.factor = to_string(factors[core.factor_index]);
      s.context = core.context;
      s.final_frequency = static_cast<double>(core.yes) / static_cast<double>(n_trials);
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(policy.threads, static_cast<unsigned>(n_sessions)));
  if (workers == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          run_range(w, workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (const auto& s : report.sessions) {
    if (distance_to(report.target, s.final_frequency) > delta) report.unsound_sessions.push_back(s.session);
  }
  for (const auto& part : report.target.components()) {
    ComponentCoverage cov{part, false, false};
    double lo = to_double(part.lo);
    double hi = to_double(part.hi);
    double seen_min = std::numeric_limits<double>::infinity();
    double seen_max = -std::numeric_limits<double>::infinity();
    for (const auto& s : report.sessions) {
      if (interval_distance(part, s.final_frequency) <= delta) {
        cov.covered = true;
        seen_min = std::min(seen_min, s.final_frequency);
        seen_max = std::max(seen_max, s.final_frequency);
      }
    }
    cov.span_covered = cov.covered && seen_min <= lo + delta && seen_max >= hi - delta;
    report.components.push_back(std::move(cov));
  }
  return report;
}

std::string recovery_csv(const RecoveryReport& report) {
  std::string out = "session,factor,context,final_frequency\n";
  for (const auto& s : report.sessions) {
    out += std::to_string(s.session) + ",\"" + s.factor + "\"," + format_double(s.context) + "," +
           format_double(s.final_frequency) + "\n";
  }
  return out;
}

std::string recovery_text(const RecoveryReport& report) {
  std::ostringstream out;
  out << "target: " << report.target << '\n';
  out << "sessions: " << report.sessions.size() << "  delta: " << format_double(report.delta) << '\n';
  if (!report.sessions.empty()) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (const auto& s : report.sessions) {
      lo = std::min(lo, s.final_frequency);
      hi = std::max(hi, s.final_frequency);
      sum += s.final_frequency;
    }
    out << "final frequency: min " << format_short(lo) << "  max " << format_short(hi) << "  mean "
        << format_short(sum / static_cast<double>(report.sessions.size())) << '\n';
  }
  out << "soundness: " << (report.soundness() ? "PASS" : "FAIL");
  if (!report.soundness()) out << " (" << report.unsound_sessions.size() << " sessions outside delta)";
  out << '\n';
  out << "coverage: " << (report.coverage() ? "PASS" : "FAIL") << '\n';
  for (const auto& c : report.components) {
    out << "  component " << UnitIntervalSet::normalize({c.component}) << ": "
        << (c.covered ? "covered" : "NOT covered") << ", span " << (c.span_covered ? "covered" : "NOT covered")
        << '\n';
  }
  return out.str();
}

}  // namespace subprob
