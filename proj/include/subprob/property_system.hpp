#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "subprob/experiment.hpp"
#include "subprob/interval_set.hpp"
#include "subprob/sep.hpp"

namespace subprob {

// Subset of a system's states, indexed like SepSystem::states().
using StateSet = boost::dynamic_bitset<>;
// rel[i][j] is the truth of "i < j".
using Relation = std::vector<std::vector<bool>>;

// {r : mu(t, r) within A}, evaluated state by state through mu_eval.
StateSet certainty_set(const SepSystem& sys, const ExperimentTerm& t, const UnitIntervalSet& a);

// p < q iff every experiment certain at q is certain at p. Computed over
// literals: a product is certain exactly when all its factors are.
Relation state_preorder(const SepSystem& sys);
Relation state_preorder(const SepSystem& sys, const UnitIntervalSet& a);

struct ExperimentPreorder {
  std::vector<ExperimentTerm> terms;  // enumerate_terms(sys.experiments())
  std::vector<StateSet> certainty;    // per term
  Relation leq;                       // terms[i] < terms[j] iff certainty[i] within certainty[j]
};

// Over the whole canonical term universe. Certainty sets come from
// intersecting literal certainty sets.
ExperimentPreorder experiment_preorder(const SepSystem& sys, const UnitIntervalSet& a);
// Terms grouped by equal certainty set; each group sorted, groups ordered by
// their least term.
std::vector<std::vector<ExperimentTerm>> equivalence_classes(const SepSystem& sys, const UnitIntervalSet& a);

struct PropertyClass {
  ExperimentTerm representative;  // least member
  std::vector<ExperimentTerm> members;
  StateSet certainty;
};

// A finite lattice given by its order and operation tables. Derived
// lattices also carry the experiment classes behind each element; a
// hand-built lattice may leave `classes` and `class_index` empty.
struct PropertyLattice {
  std::size_t size = 0;
  std::vector<PropertyClass> classes;
  Relation leq;
  std::vector<std::vector<std::size_t>> meet;
  std::vector<std::vector<std::size_t>> join;
  std::size_t top = 0;
  std::size_t bottom = 0;
  std::map<ExperimentTerm, std::size_t> class_index;

  std::optional<std::size_t> class_of(const ExperimentTerm& t) const;
  // Infimum of a family; the top for an empty family.
  std::size_t meet_all(std::span<const std::size_t> elements) const;
  std::string label(std::size_t element) const;
};

// Elements are the equivalence classes, ordered by representative. Meet of
// two classes is the class of the product of their representatives; join
// is the meet of all common upper bounds.
//
// std::domain_error if no greatest class exists, which can only happen
// when 1 is not in A.
PropertyLattice build_lattice(const SepSystem& sys, const UnitIntervalSet& a);
PropertyLattice build_lattice(const SepSystem& sys);

struct StatePropertySystem {
  std::vector<std::string> states;
  Relation state_leq;
  PropertyLattice lattice;
  Relation xi;  // xi[p][a]: property a is actual in state p
  UnitIntervalSet certainty_target = UnitIntervalSet::point(1);
  std::vector<std::string> warnings;
};

// xi(p) = classes whose certainty set contains p.
Relation xi_map(const SepSystem& sys, const PropertyLattice& lattice);

// The state property system related to a SEP: certainty is mu within {1}.
StatePropertySystem derive_sp(const SepSystem& sys);
// Same construction with {1} replaced by A. Warnings are attached when A
// misses 1 or when the least property becomes actual in some state.
StatePropertySystem derive_sp_general(const SepSystem& sys, const UnitIntervalSet& a);

struct SpViolation {
  enum class Kind { malformed, lattice, statprop01, statprop02, statprop03, statprop04, statprop05 };

  Kind kind;
  std::string message;
};

std::string_view kind_name(SpViolation::Kind kind);

// Checks the lattice tables (partial order, glb, lub, top, bottom) and the
// five state property system axioms. Meets of arbitrary families are
// enumerated when the lattice has at most 12 elements; above that only
// pairs are enumerated, which suffices because the meet table is checked
// to be the greatest lower bound and every finite meet is an iterated
// binary one.
std::vector<SpViolation> validate_sp(const StatePropertySystem& sp);

// Hasse diagram: cover relation only, rank direction bottom-to-top so the
// greatest element is drawn at the top.
std::string lattice_dot(const StatePropertySystem& sp);
// Class table (representative, member count, certainty set) and xi table.
std::string sp_text(const StatePropertySystem& sp);

}  // namespace subprob
