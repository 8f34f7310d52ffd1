#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "subprob/experiment.hpp"
#include "subprob/property_system.hpp"
#include "subprob/sep.hpp"

namespace subprob {

// A morphism (m, l) from (S', Q', mu') to (S, Q, mu): S' is the larger
// entity and S a subentity of it. States map forward, m: S' -> S, while
// experiments map backward, l: base(Q) -> canonical terms over base(Q').
struct SepMorphism {
  std::map<std::string, std::string> state_map;         // m
  std::map<std::string, ExperimentTerm> experiment_map;  // l on base symbols

  friend bool operator==(const SepMorphism&, const SepMorphism&) = default;
};

// (m, n) between state property systems: m: S' -> S, n: L -> L'.
struct SpMorphism {
  std::map<std::string, std::string> state_map;
  std::vector<std::size_t> element_map;

  friend bool operator==(const SpMorphism&, const SpMorphism&) = default;
};

// l extended to all terms so that it commutes with product and inverse.
// LookupError for a symbol l does not map.
ExperimentTerm extend_l(const std::map<std::string, ExperimentTerm>& l, const ExperimentTerm& t);

struct MorphismViolation {
  enum class Kind {
    unmapped_state,        // p' in S' without m(p')
    unknown_state,         // m names a state outside the source or target
    unmapped_experiment,   // base symbol of Q without l(b)
    unknown_experiment,    // l maps a symbol not in Q, or into symbols outside Q'
    unit_not_preserved,    // l(tau) not certain at p'
    covariance,            // mu(b, m(p')) != mu'(l(b), p')
  };

  Kind kind;
  std::string experiment;
  std::string state;

  std::string describe() const;
};

std::string_view kind_name(MorphismViolation::Kind kind);

// Checks totality, the unit invariant and covariance on base symbols; the
// operations commute on both sides, so this covers every term.
std::vector<MorphismViolation> validate_sep_morphism(const SepSystem& src, const SepSystem& dst,
                                                     const SepMorphism& phi);

class MorphismError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// n(a) = class of extend_l(l, alpha) for alpha in a, checked on every member
// of every class. MorphismError if two members of one class land in
// different classes, or if an image term is not in the source lattice.
SpMorphism derive_sp_morphism(const SepMorphism& phi, const StatePropertySystem& sp_src,
                              const StatePropertySystem& sp_dst);

struct SpMorphismViolation {
  std::size_t element = 0;
  std::string state;  // p' in the source
  std::string message;
};

// a in xi(m(p')) iff n(a) in xi'(p'), for all a in L, p' in S'. Totality
// problems are reported with element set to the offending index.
std::vector<SpMorphismViolation> validate_sp_morphism(const StatePropertySystem& sp_src,
                                                      const StatePropertySystem& sp_dst, const SpMorphism& psi);

SepMorphism identity_morphism(const SepSystem& sys);
SpMorphism identity_morphism(const StatePropertySystem& sp);

// phi1: S1 -> S2 and phi2: S2 -> S3 give S1 -> S3 with m = m2 . m1 and
// l = l1 . l2. std::domain_error if the maps do not line up.
SepMorphism compose(const SepMorphism& phi2, const SepMorphism& phi1);
SpMorphism compose(const SpMorphism& psi2, const SpMorphism& psi1);

// Morphism file: "state p' -> p" and "exp a -> <term over Q'>" lines, '#'
// comments. A missing "exp tau" line defaults to tau. ParseError on
// malformed or duplicate lines.
SepMorphism parse_morphism(std::string_view text);
SepMorphism load_morphism(const std::filesystem::path& path);
std::string format_morphism(const SepMorphism& phi);

}  // namespace subprob
