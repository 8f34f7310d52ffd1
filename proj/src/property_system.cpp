#include "subprob/property_system.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace subprob {

namespace {

std::vector<Literal> base_literals(const SepSystem& sys) {
  std::vector<Literal> lits;
  for (const auto& b : sys.experiments()) {
    lits.push_back({b, false});
    lits.push_back({b, true});
  }
  std::sort(lits.begin(), lits.end());
  return lits;
}

std::map<Literal, StateSet> literal_certainty(const SepSystem& sys, const UnitIntervalSet& a) {
  std::map<Literal, StateSet> out;
  for (const auto& lit : base_literals(sys)) out.emplace(lit, certainty_set(sys, literal_term(lit), a));
  return out;
}

StateSet term_certainty(const std::map<Literal, StateSet>& lit_cert, const ExperimentTerm& t,
                        std::size_t n_states) {
  StateSet out(n_states);
  out.set();
  for (const auto& lit : t.literals()) out &= lit_cert.at(lit);
  return out;
}

Relation square(std::size_t n) { return Relation(n, std::vector<bool>(n, false)); }

std::string state_set_text(const StateSet& set, const std::vector<std::string>& states) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!set.test(i)) continue;
    if (!first) out += ", ";
    first = false;
    out += states[i];
  }
  return out + "}";
}

}  // namespace

StateSet certainty_set(const SepSystem& sys, const ExperimentTerm& t, const UnitIntervalSet& a) {
  StateSet out(sys.states().size());
  for (std::size_t i = 0; i < sys.states().size(); ++i) {
    if (holds_within(sys, t, sys.states()[i], a)) out.set(i);
  }
  return out;
}

Relation state_preorder(const SepSystem& sys) { return state_preorder(sys, UnitIntervalSet::point(1)); }

Relation state_preorder(const SepSystem& sys, const UnitIntervalSet& a) {
  const std::size_t n = sys.states().size();
  auto lit_cert = literal_certainty(sys, a);
  Relation rel = square(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      rel[p][q] = std::all_of(lit_cert.begin(), lit_cert.end(),
                              [&](const auto& entry) { return !entry.second.test(q) || entry.second.test(p); });
    }
  }
  return rel;
}

ExperimentPreorder experiment_preorder(const SepSystem& sys, const UnitIntervalSet& a) {
  ExperimentPreorder out;
  out.terms = enumerate_terms(sys.experiments());
  auto lit_cert = literal_certainty(sys, a);
  out.certainty.reserve(out.terms.size());
  for (const auto& t : out.terms) out.certainty.push_back(term_certainty(lit_cert, t, sys.states().size()));
  out.leq = square(out.terms.size());
  for (std::size_t i = 0; i < out.terms.size(); ++i) {
    for (std::size_t j = 0; j < out.terms.size(); ++j) {
      out.leq[i][j] = out.certainty[i].is_subset_of(out.certainty[j]);
    }
  }
  return out;
}

namespace {

// Groups terms by certainty set; groups ordered by least member.
std::vector<PropertyClass> group_classes(const SepSystem& sys, const UnitIntervalSet& a) {
  auto terms = enumerate_terms(sys.experiments());
  auto lit_cert = literal_certainty(sys, a);
  std::map<StateSet, std::size_t> by_set;
  std::vector<PropertyClass> classes;
  for (auto& t : terms) {  // sorted, so the first member seen is the least
    StateSet cert = term_certainty(lit_cert, t, sys.states().size());
    auto [it, inserted] = by_set.emplace(cert, classes.size());
    if (inserted) classes.push_back({t, {}, cert});
    classes[it->second].members.push_back(std::move(t));
  }
  return classes;
}

}  // namespace

std::vector<std::vector<ExperimentTerm>> equivalence_classes(const SepSystem& sys, const UnitIntervalSet& a) {
  std::vector<std::vector<ExperimentTerm>> out;
  for (auto& c : group_classes(sys, a)) out.push_back(std::move(c.members));
  return out;
}

std::optional<std::size_t> PropertyLattice::class_of(const ExperimentTerm& t) const {
  auto it = class_index.find(t);
  if (it == class_index.end()) return std::nullopt;
  return it->second;
}

std::size_t PropertyLattice::meet_all(std::span<const std::size_t> elements) const {
  std::size_t acc = top;
  for (auto e : elements) acc = meet.at(acc).at(e);
  return acc;
}

std::string PropertyLattice::label(std::size_t element) const {
  if (element < classes.size()) return to_string(classes[element].representative);
  return "#" + std::to_string(element);
}

PropertyLattice build_lattice(const SepSystem& sys) { return build_lattice(sys, UnitIntervalSet::point(1)); }

PropertyLattice build_lattice(const SepSystem& sys, const UnitIntervalSet& a) {
  PropertyLattice lat;
  lat.classes = group_classes(sys, a);
  const std::size_t k = lat.classes.size();
  lat.size = k;
  std::map<StateSet, std::size_t> by_set;
  for (std::size_t i = 0; i < k; ++i) {
    by_set.emplace(lat.classes[i].certainty, i);
    for (const auto& m : lat.classes[i].members) lat.class_index.emplace(m, i);
  }

  lat.leq = square(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      lat.leq[i][j] = lat.classes[i].certainty.is_subset_of(lat.classes[j].certainty);
    }
  }

  auto greatest = std::find_if(lat.classes.begin(), lat.classes.end(), [&](const PropertyClass& c) {
    return std::all_of(lat.classes.begin(), lat.classes.end(),
                       [&](const PropertyClass& d) { return d.certainty.is_subset_of(c.certainty); });
  });
  if (greatest == lat.classes.end()) {
    throw std::domain_error("no greatest property for certainty target; the classes do not form a complete lattice");
  }
  lat.top = static_cast<std::size_t>(greatest - lat.classes.begin());

  // The product of all literals is a term, so the intersection of every
  // certainty set is itself a class.
  StateSet all(sys.states().size());
  all.set();
  for (const auto& c : lat.classes) all &= c.certainty;
  lat.bottom = by_set.at(all);

  lat.meet.assign(k, std::vector<std::size_t>(k));
  lat.join.assign(k, std::vector<std::size_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      lat.meet[i][j] = lat.class_index.at(product({lat.classes[i].representative, lat.classes[j].representative}));
      StateSet bound(sys.states().size());
      bound.set();
      for (std::size_t c = 0; c < k; ++c) {
        if (lat.leq[i][c] && lat.leq[j][c]) bound &= lat.classes[c].certainty;
      }
      lat.join[i][j] = by_set.at(bound);
    }
  }
  return lat;
}

Relation xi_map(const SepSystem& sys, const PropertyLattice& lattice) {
  Relation xi(sys.states().size(), std::vector<bool>(lattice.size, false));
  for (std::size_t p = 0; p < sys.states().size(); ++p) {
    for (std::size_t e = 0; e < lattice.size; ++e) xi[p][e] = lattice.classes.at(e).certainty.test(p);
  }
  return xi;
}

StatePropertySystem derive_sp(const SepSystem& sys) { return derive_sp_general(sys, UnitIntervalSet::point(1)); }

StatePropertySystem derive_sp_general(const SepSystem& sys, const UnitIntervalSet& a) {
  StatePropertySystem sp;
  sp.states = sys.states();
  sp.state_leq = state_preorder(sys, a);
  sp.lattice = build_lattice(sys, a);
  sp.xi = xi_map(sys, sp.lattice);
  sp.certainty_target = a;
  if (!a.contains(1)) {
    sp.warnings.push_back("certainty target " + to_string(a) +
                          " does not contain 1: the unit experiment need not be certain");
  }
  if (auto unit = sp.lattice.class_of(ExperimentTerm::base(std::string(kUnitSymbol)));
      unit && *unit != sp.lattice.top) {
    sp.warnings.push_back("the class of tau is not the greatest property");
  }
  for (std::size_t p = 0; p < sp.states.size(); ++p) {
    if (sp.xi[p][sp.lattice.bottom]) {
      sp.warnings.push_back("the least property is actual in state " + sp.states[p] +
                            "; statprop02 fails for certainty target " + to_string(a));
      break;
    }
  }
  return sp;
}

std::string_view kind_name(SpViolation::Kind kind) {
  switch (kind) {
    case SpViolation::Kind::malformed: return "Malformed";
    case SpViolation::Kind::lattice: return "LatticeViolation";
    case SpViolation::Kind::statprop01: return "Statprop01Violation";
    case SpViolation::Kind::statprop02: return "Statprop02Violation";
    case SpViolation::Kind::statprop03: return "Statprop03Violation";
    case SpViolation::Kind::statprop04: return "Statprop04Violation";
    case SpViolation::Kind::statprop05: return "Statprop05Violation";
  }
  return "?";
}

namespace {

using K = SpViolation::Kind;

bool square_of(const Relation& r, std::size_t n) {
  return r.size() == n && std::all_of(r.begin(), r.end(), [n](const auto& row) { return row.size() == n; });
}

template <class T>
bool table_of(const std::vector<std::vector<T>>& t, std::size_t n, std::size_t bound) {
  if (t.size() != n) return false;
  for (const auto& row : t) {
    if (row.size() != n) return false;
    for (auto v : row) {
      if (v >= bound) return false;
    }
  }
  return true;
}

void check_lattice(const PropertyLattice& lat, std::vector<SpViolation>& out) {
  const std::size_t k = lat.size;
  auto L = [&](std::size_t e) { return lat.label(e); };
  for (std::size_t a = 0; a < k; ++a) {
    if (!lat.leq[a][a]) out.push_back({K::lattice, "order not reflexive at " + L(a)});
    if (!lat.leq[a][lat.top]) out.push_back({K::lattice, L(a) + " is not below the top"});
    if (!lat.leq[lat.bottom][a]) out.push_back({K::lattice, "the bottom is not below " + L(a)});
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b && lat.leq[a][b] && lat.leq[b][a]) {
        out.push_back({K::lattice, "order not antisymmetric on " + L(a) + ", " + L(b)});
      }
      for (std::size_t c = 0; c < k; ++c) {
        if (lat.leq[a][b] && lat.leq[b][c] && !lat.leq[a][c]) {
          out.push_back({K::lattice, "order not transitive on " + L(a) + ", " + L(b) + ", " + L(c)});
        }
      }
      std::size_t m = lat.meet[a][b];
      std::size_t j = lat.join[a][b];
      bool glb = lat.leq[m][a] && lat.leq[m][b];
      bool lub = lat.leq[a][j] && lat.leq[b][j];
      for (std::size_t c = 0; c < k; ++c) {
        if (lat.leq[c][a] && lat.leq[c][b] && !lat.leq[c][m]) glb = false;
        if (lat.leq[a][c] && lat.leq[b][c] && !lat.leq[j][c]) lub = false;
      }
      if (!glb) out.push_back({K::lattice, "meet(" + L(a) + ", " + L(b) + ") is not the greatest lower bound"});
      if (!lub) out.push_back({K::lattice, "join(" + L(a) + ", " + L(b) + ") is not the least upper bound"});
    }
  }
}

}  // namespace

std::vector<SpViolation> validate_sp(const StatePropertySystem& sp) {
  std::vector<SpViolation> out;
  const auto& lat = sp.lattice;
  const std::size_t k = lat.size;
  const std::size_t n = sp.states.size();
  if (k == 0 || lat.top >= k || lat.bottom >= k || !square_of(lat.leq, k) || !table_of(lat.meet, k, k) ||
      !table_of(lat.join, k, k) || !square_of(sp.state_leq, n) || sp.xi.size() != n ||
      std::any_of(sp.xi.begin(), sp.xi.end(), [k](const auto& row) { return row.size() != k; })) {
    out.push_back({K::malformed, "table sizes do not match the state and element counts"});
    return out;
  }
  check_lattice(lat, out);

  auto L = [&](std::size_t e) { return lat.label(e); };
  for (std::size_t p = 0; p < n; ++p) {
    const auto& P = sp.states[p];
    if (!sp.xi[p][lat.top]) out.push_back({K::statprop01, "I not in xi(" + P + ")"});
    if (sp.xi[p][lat.bottom]) out.push_back({K::statprop02, "0 in xi(" + P + ")"});

    if (k <= 12) {
      for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        std::vector<std::size_t> family;
        bool all_actual = true;
        for (std::size_t e = 0; e < k; ++e) {
          if (!(mask & (std::size_t{1} << e))) continue;
          family.push_back(e);
          all_actual = all_actual && sp.xi[p][e];
        }
        std::size_t m = lat.meet_all(family);
        if (all_actual != sp.xi[p][m]) {
          std::string names;
          for (auto e : family) names += (names.empty() ? "" : ", ") + L(e);
          out.push_back({K::statprop03, "family {" + names + "} at " + P});
        }
      }
    } else {
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
          if ((sp.xi[p][a] && sp.xi[p][b]) != sp.xi[p][lat.meet[a][b]]) {
            out.push_back({K::statprop03, "family {" + L(a) + ", " + L(b) + "} at " + P});
          }
        }
      }
    }

    for (std::size_t q = 0; q < n; ++q) {
      bool contained = true;  // xi(q) within xi(p)
      for (std::size_t e = 0; e < k; ++e) {
        if (sp.xi[q][e] && !sp.xi[p][e]) contained = false;
      }
      if (sp.state_leq[p][q] != contained) {
        out.push_back({K::statprop04, "(" + P + ", " + sp.states[q] + "): p < q is " +
                                          (sp.state_leq[p][q] ? "true" : "false") + " but xi(q) within xi(p) is " +
                                          (contained ? "true" : "false")});
      }
    }
  }

  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      bool follows = true;
      for (std::size_t r = 0; r < n; ++r) {
        if (sp.xi[r][a] && !sp.xi[r][b]) follows = false;
      }
      if (lat.leq[a][b] != follows) out.push_back({K::statprop05, "(" + L(a) + ", " + L(b) + ")"});
    }
  }
  return out;
}

std::string lattice_dot(const StatePropertySystem& sp) {
  const auto& lat = sp.lattice;
  std::ostringstream out;
  out << "digraph properties {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t e = 0; e < lat.size; ++e) {
    out << "  n" << e << " [label=\"" << lat.label(e);
    if (e < lat.classes.size()) out << "\\n" << state_set_text(lat.classes[e].certainty, sp.states);
    out << "\"];\n";
  }
  for (std::size_t a = 0; a < lat.size; ++a) {
    for (std::size_t b = 0; b < lat.size; ++b) {
      if (a == b || !lat.leq[a][b]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < lat.size && cover; ++c) {
        if (c != a && c != b && lat.leq[a][c] && lat.leq[c][b]) cover = false;
      }
      if (cover) out << "  n" << a << " -> n" << b << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string sp_text(const StatePropertySystem& sp) {
  const auto& lat = sp.lattice;
  std::ostringstream out;
  out << "certainty target: " << sp.certainty_target << '\n';
  out << "properties: " << lat.size << " (top " << lat.label(lat.top) << ", bottom " << lat.label(lat.bottom)
      << ")\n";
  for (std::size_t e = 0; e < lat.size; ++e) {
    out << "  [" << e << "] " << lat.label(e);
    if (e < lat.classes.size()) {
      out << "  members " << lat.classes[e].members.size() << "  certain in "
          << state_set_text(lat.classes[e].certainty, sp.states);
    }
    if (e == lat.top) out << "  (I)";
    if (e == lat.bottom) out << "  (0)";
    out << '\n';
  }
  out << "actual properties:\n";
  for (std::size_t p = 0; p < sp.states.size(); ++p) {
    out << "  xi(" << sp.states[p] << ") = {";
    bool first = true;
    for (std::size_t e = 0; e < lat.size; ++e) {
      if (!sp.xi[p][e]) continue;
      out << (first ? "" : ", ") << lat.label(e);
      first = false;
    }
    out << "}\n";
  }
  out << "state order:\n";
  for (std::size_t p = 0; p < sp.states.size(); ++p) {
    for (std::size_t q = 0; q < sp.states.size(); ++q) {
      if (p != q && sp.state_leq[p][q]) out << "  " << sp.states[p] << " < " << sp.states[q] << '\n';
    }
  }
  for (const auto& w : sp.warnings) out << "warning: " << w << '\n';
  return out.str();
}

}  // namespace subprob
