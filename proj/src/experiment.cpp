#include "subprob/experiment.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "subprob/rational.hpp"
#include "text_cursor.hpp"

namespace subprob {

bool is_valid_symbol(std::string_view id) {
  if (id.empty() || !detail::is_ident_start(id.front()) || id == "prod") return false;
  return std::all_of(id.begin(), id.end(), detail::is_ident_char);
}

ExperimentTerm ExperimentTerm::base(std::string symbol) { return from_literals({Literal{std::move(symbol), false}}); }

ExperimentTerm::Kind ExperimentTerm::kind() const noexcept {
  if (literals_.size() > 1) return Kind::product;
  return literals_.front().inverted ? Kind::tilde : Kind::base;
}

std::strong_ordering operator<=>(const ExperimentTerm& a, const ExperimentTerm& b) {
  if (auto c = a.literals_.size() <=> b.literals_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.literals_.begin(), a.literals_.end(), b.literals_.begin(),
                                                b.literals_.end());
}

ExperimentTerm from_literals(std::vector<Literal> literals) {
  if (literals.empty()) throw std::domain_error("empty product of experiments");
  for (const auto& lit : literals) {
    if (!is_valid_symbol(lit.symbol)) throw std::domain_error("invalid experiment symbol '" + lit.symbol + "'");
  }
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  return ExperimentTerm(std::move(literals));
}

ExperimentTerm literal_term(const Literal& lit) { return from_literals({lit}); }

ExperimentTerm tilde(const ExperimentTerm& t) {
  std::vector<Literal> flipped(t.literals_.begin(), t.literals_.end());
  for (auto& lit : flipped) lit.inverted = !lit.inverted;
  std::sort(flipped.begin(), flipped.end());
  return ExperimentTerm(std::move(flipped));
}

ExperimentTerm product(std::span<const ExperimentTerm> factors) {
  if (factors.empty()) throw std::domain_error("empty product of experiments");
  std::vector<Literal> all;
  for (const auto& f : factors) all.insert(all.end(), f.literals_.begin(), f.literals_.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return ExperimentTerm(std::move(all));
}

ExperimentTerm product(std::initializer_list<ExperimentTerm> factors) {
  return product(std::span<const ExperimentTerm>(factors.begin(), factors.size()));
}

std::vector<ExperimentTerm> enumerate_terms(std::span<const std::string> base) {
  if (std::find(base.begin(), base.end(), kUnitSymbol) == base.end()) {
    throw std::domain_error("experiment base must contain the unit symbol");
  }
  if (base.size() > kMaxEnumerableSymbols) {
    throw std::domain_error("too many base experiments to enumerate (" + std::to_string(base.size()) + " > " +
                            std::to_string(kMaxEnumerableSymbols) + ")");
  }
  std::vector<Literal> lits;
  for (const auto& b : base) {
    lits.push_back({b, false});
    lits.push_back({b, true});
  }
  std::vector<ExperimentTerm> terms;
  const std::size_t n = lits.size();
  terms.reserve((std::size_t{1} << n) - 1);
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Literal> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) chosen.push_back(lits[i]);
    }
    terms.push_back(from_literals(std::move(chosen)));
  }
  std::sort(terms.begin(), terms.end());
  return terms;
}

TermTree TermTree::leaf(std::string symbol) { return {Kind::symbol, std::move(symbol), {}}; }

TermTree TermTree::inverse(TermTree inner) {
  TermTree t{Kind::tilde, {}, {}};
  t.children.push_back(std::move(inner));
  return t;
}

TermTree TermTree::prod(std::vector<TermTree> factors) { return {Kind::product, {}, std::move(factors)}; }

ExperimentTerm canonicalize(const TermTree& tree) {
  switch (tree.kind) {
    case TermTree::Kind::symbol:
      return ExperimentTerm::base(tree.symbol);
    case TermTree::Kind::tilde:
      return tilde(canonicalize(tree.children.at(0)));
    case TermTree::Kind::product: {
      std::vector<ExperimentTerm> factors;
      factors.reserve(tree.children.size());
      for (const auto& child : tree.children) factors.push_back(canonicalize(child));
      return product(factors);
    }
  }
  throw std::logic_error("unreachable term kind");
}

namespace {

TermTree parse_tree(detail::TextCursor& cursor) {
  if (cursor.consume('~')) return TermTree::inverse(parse_tree(cursor));
  std::size_t column = cursor.column();
  std::string id = cursor.identifier();
  if (id == "prod") {
    cursor.expect('(');
    std::vector<TermTree> factors;
    do {
      factors.push_back(parse_tree(cursor));
    } while (cursor.consume(','));
    cursor.expect(')');
    return TermTree::prod(std::move(factors));
  }
  if (!is_valid_symbol(id)) throw ParseError(0, column, "invalid experiment symbol '" + id + "'");
  return TermTree::leaf(std::move(id));
}

}  // namespace

TermTree parse_term_tree(std::string_view text) {
  detail::TextCursor cursor(text);
  TermTree tree = parse_tree(cursor);
  cursor.expect_end();
  return tree;
}

ExperimentTerm parse_term(std::string_view text) { return canonicalize(parse_term_tree(text)); }

namespace {

std::string literal_text(const Literal& lit) { return (lit.inverted ? "~" : "") + lit.symbol; }

}  // namespace

std::string to_string(const ExperimentTerm& t) {
  if (t.is_literal()) return literal_text(t.literals().front());
  std::string out = "prod(";
  bool first = true;
  for (const auto& lit : t.literals()) {
    if (!first) out += ", ";
    first = false;
    out += literal_text(lit);
  }
  return out + ")";
}

std::string to_string(const TermTree& t) {
  switch (t.kind) {
    case TermTree::Kind::symbol:
      return t.symbol;
    case TermTree::Kind::tilde:
      return "~" + to_string(t.children.at(0));
    case TermTree::Kind::product: {
      std::string out = "prod(";
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t.children[i]);
      }
      return out + ")";
    }
  }
  return {};
}

std::ostream& operator<<(std::ostream& os, const ExperimentTerm& t) { return os << to_string(t); }

}  // namespace subprob
