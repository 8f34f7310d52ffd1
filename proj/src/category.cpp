#include "subprob/category.hpp"

#include <algorithm>
#include <sstream>

#include "text_cursor.hpp"

namespace subprob {

ExperimentTerm extend_l(const std::map<std::string, ExperimentTerm>& l, const ExperimentTerm& t) {
  std::vector<ExperimentTerm> images;
  images.reserve(t.size());
  for (const auto& lit : t.literals()) {
    auto it = l.find(lit.symbol);
    if (it == l.end()) throw LookupError("experiment map has no image for '" + lit.symbol + "'");
    images.push_back(lit.inverted ? tilde(it->second) : it->second);
  }
  return product(images);
}

std::string_view kind_name(MorphismViolation::Kind kind) {
  switch (kind) {
    case MorphismViolation::Kind::unmapped_state: return "UnmappedState";
    case MorphismViolation::Kind::unknown_state: return "UnknownState";
    case MorphismViolation::Kind::unmapped_experiment: return "UnmappedExperiment";
    case MorphismViolation::Kind::unknown_experiment: return "UnknownExperiment";
    case MorphismViolation::Kind::unit_not_preserved: return "UnitNotPreserved";
    case MorphismViolation::Kind::covariance: return "CovarianceViolation";
  }
  return "?";
}

std::string MorphismViolation::describe() const {
  std::string out(kind_name(kind));
  if (!experiment.empty() && !state.empty()) return out + "(" + experiment + ", " + state + ")";
  return out + "(" + experiment + state + ")";
}

std::vector<MorphismViolation> validate_sep_morphism(const SepSystem& src, const SepSystem& dst,
                                                     const SepMorphism& phi) {
  using K = MorphismViolation::Kind;
  std::vector<MorphismViolation> out;

  for (const auto& [from, to] : phi.state_map) {
    if (!src.has_state(from)) out.push_back({K::unknown_state, {}, from});
  }
  std::vector<std::pair<std::string, std::string>> states;  // (p', m(p'))
  for (const auto& p : src.states()) {
    auto it = phi.state_map.find(p);
    if (it == phi.state_map.end()) {
      out.push_back({K::unmapped_state, {}, p});
    } else if (!dst.has_state(it->second)) {
      out.push_back({K::unknown_state, {}, it->second});
    } else {
      states.emplace_back(p, it->second);
    }
  }

  for (const auto& [b, image] : phi.experiment_map) {
    if (!dst.has_experiment(b)) out.push_back({K::unknown_experiment, b, {}});
  }
  std::vector<std::pair<std::string, const ExperimentTerm*>> experiments;
  for (const auto& b : dst.experiments()) {
    auto it = phi.experiment_map.find(b);
    if (it == phi.experiment_map.end()) {
      out.push_back({K::unmapped_experiment, b, {}});
      continue;
    }
    bool known = true;
    for (const auto& lit : it->second.literals()) {
      if (!src.has_experiment(lit.symbol)) {
        out.push_back({K::unknown_experiment, lit.symbol, {}});
        known = false;
      }
    }
    if (known) experiments.emplace_back(b, &it->second);
  }

  for (const auto& [b, image] : experiments) {
    for (const auto& [p_src, p_dst] : states) {
      try {
        if (b == kUnitSymbol && !is_certain(src, *image, p_src)) {
          out.push_back({K::unit_not_preserved, b, p_src});
        }
        if (dst.entry(b, p_dst) != mu_eval(src, *image, p_src)) out.push_back({K::covariance, b, p_src});
      } catch (const LookupError&) {
        out.push_back({K::covariance, b, p_src});
      }
    }
  }
  return out;
}

SpMorphism derive_sp_morphism(const SepMorphism& phi, const StatePropertySystem& sp_src,
                              const StatePropertySystem& sp_dst) {
  const auto& dst_lat = sp_dst.lattice;
  const auto& src_lat = sp_src.lattice;
  SpMorphism psi;
  psi.state_map = phi.state_map;
  psi.element_map.resize(dst_lat.size);
  for (std::size_t a = 0; a < dst_lat.size; ++a) {
    const auto& cls = dst_lat.classes.at(a);
    std::optional<std::size_t> image;
    for (const auto& member : cls.members) {
      ExperimentTerm mapped = extend_l(phi.experiment_map, member);
      auto target = src_lat.class_of(mapped);
      if (!target) {
        throw MorphismError("image " + to_string(mapped) + " of " + to_string(member) +
                            " is not a term of the source system");
      }
      if (image && *image != *target) {
        throw MorphismError("n is ill-defined on class " + to_string(cls.representative) + ": members land in " +
                            src_lat.label(*image) + " and " + src_lat.label(*target));
      }
      image = target;
    }
    psi.element_map[a] = *image;
  }
  return psi;
}

std::vector<SpMorphismViolation> validate_sp_morphism(const StatePropertySystem& sp_src,
                                                      const StatePropertySystem& sp_dst, const SpMorphism& psi) {
  std::vector<SpMorphismViolation> out;
  const auto& lat = sp_dst.lattice;
  if (psi.element_map.size() != lat.size) {
    out.push_back({0, {}, "n is defined on " + std::to_string(psi.element_map.size()) + " elements, L has " +
                              std::to_string(lat.size)});
    return out;
  }
  for (std::size_t a = 0; a < lat.size; ++a) {
    if (psi.element_map[a] >= sp_src.lattice.size) out.push_back({a, {}, "n(" + lat.label(a) + ") outside L'"});
  }
  if (!out.empty()) return out;

  for (std::size_t ps = 0; ps < sp_src.states.size(); ++ps) {
    const auto& p_src = sp_src.states[ps];
    auto it = psi.state_map.find(p_src);
    auto pos = it == psi.state_map.end() ? sp_dst.states.end()
                                         : std::find(sp_dst.states.begin(), sp_dst.states.end(), it->second);
    if (pos == sp_dst.states.end()) {
      out.push_back({0, p_src, "m(" + p_src + ") is not a state of the target"});
      continue;
    }
    auto pd = static_cast<std::size_t>(pos - sp_dst.states.begin());
    for (std::size_t a = 0; a < lat.size; ++a) {
      bool lhs = sp_dst.xi[pd][a];
      bool rhs = sp_src.xi[ps][psi.element_map[a]];
      if (lhs != rhs) {
        out.push_back({a, p_src,
                       lat.label(a) + (lhs ? " in" : " not in") + " xi(m(" + p_src + ")) but n(a) = " +
                           sp_src.lattice.label(psi.element_map[a]) + (rhs ? " in" : " not in") + " xi'(" +
                           p_src + ")"});
      }
    }
  }
  return out;
}

SepMorphism identity_morphism(const SepSystem& sys) {
  SepMorphism phi;
  for (const auto& s : sys.states()) phi.state_map.emplace(s, s);
  for (const auto& e : sys.experiments()) phi.experiment_map.emplace(e, ExperimentTerm::base(e));
  return phi;
}

SpMorphism identity_morphism(const StatePropertySystem& sp) {
  SpMorphism psi;
  for (const auto& s : sp.states) psi.state_map.emplace(s, s);
  psi.element_map.resize(sp.lattice.size);
  for (std::size_t a = 0; a < sp.lattice.size; ++a) psi.element_map[a] = a;
  return psi;
}

namespace {

std::map<std::string, std::string> compose_states(const std::map<std::string, std::string>& m2,
                                                  const std::map<std::string, std::string>& m1) {
  std::map<std::string, std::string> out;
  for (const auto& [p1, p2] : m1) {
    auto it = m2.find(p2);
    if (it == m2.end()) throw std::domain_error("cannot compose: state '" + p2 + "' is not mapped by the second morphism");
    out.emplace(p1, it->second);
  }
  return out;
}

}  // namespace

SepMorphism compose(const SepMorphism& phi2, const SepMorphism& phi1) {
  SepMorphism out;
  out.state_map = compose_states(phi2.state_map, phi1.state_map);
  for (const auto& [b, image] : phi2.experiment_map) {
    try {
      out.experiment_map.emplace(b, extend_l(phi1.experiment_map, image));
    } catch (const LookupError& e) {
      throw std::domain_error(std::string("cannot compose: ") + e.what());
    }
  }
  return out;
}

SpMorphism compose(const SpMorphism& psi2, const SpMorphism& psi1) {
  SpMorphism out;
  out.state_map = compose_states(psi2.state_map, psi1.state_map);
  out.element_map.reserve(psi2.element_map.size());
  for (auto mid : psi2.element_map) {
    if (mid >= psi1.element_map.size()) throw std::domain_error("cannot compose: element maps do not line up");
    out.element_map.push_back(psi1.element_map[mid]);
  }
  return out;
}

SepMorphism parse_morphism(std::string_view text) {
  SepMorphism phi;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    detail::TextCursor cursor(line);
    if (cursor.at_end()) continue;
    try {
      std::size_t keyword_column = cursor.column();
      std::string keyword = cursor.identifier();
      if (keyword != "state" && keyword != "exp") {
        throw ParseError(0, keyword_column, "expected 'state' or 'exp', found '" + keyword + "'");
      }
      std::string from = cursor.identifier();
      cursor.expect('-');
      cursor.expect('>');
      if (keyword == "state") {
        std::string to = cursor.identifier();
        cursor.expect_end();
        if (!phi.state_map.emplace(from, to).second) {
          throw ParseError(0, keyword_column, "state '" + from + "' mapped twice");
        }
      } else {
        std::size_t term_column = cursor.column();
        ExperimentTerm image = ExperimentTerm::base(std::string(kUnitSymbol));
        try {
          image = parse_term(line.substr(term_column - 1));
        } catch (const ParseError& e) {
          throw e.relocated(0, term_column - 1);
        }
        if (!phi.experiment_map.emplace(from, image).second) {
          throw ParseError(0, keyword_column, "experiment '" + from + "' mapped twice");
        }
      }
    } catch (const ParseError& e) {
      throw e.relocated(line_no, 0);
    }
  }
  phi.experiment_map.emplace(std::string(kUnitSymbol), ExperimentTerm::base(std::string(kUnitSymbol)));
  return phi;
}

SepMorphism load_morphism(const std::filesystem::path& path) { return parse_morphism(read_text_file(path)); }

std::string format_morphism(const SepMorphism& phi) {
  std::ostringstream out;
  for (const auto& [from, to] : phi.state_map) out << "state " << from << " -> " << to << '\n';
  for (const auto& [b, image] : phi.experiment_map) out << "exp " << b << " -> " << image << '\n';
  return out.str();
}

}  // namespace subprob
