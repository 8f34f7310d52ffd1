#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace subprob {

// The unit experiment: certain in every state.
inline constexpr std::string_view kUnitSymbol = "tau";

// True for [A-Za-z_][A-Za-z0-9_']* other than the reserved word "prod".
bool is_valid_symbol(std::string_view id);

// A base experiment symbol, possibly inverted (yes and no swapped).
struct Literal {
  std::string symbol;
  bool inverted = false;

  friend auto operator<=>(const Literal&, const Literal&) = default;
  friend bool operator==(const Literal&, const Literal&) = default;
};

// A yes/no-experiment in canonical form.
//
// Inversion is pushed down to base symbols and products are flattened and
// deduplicated, so every canonical term is one literal or a product of at
// least two distinct literals. The term is stored as its sorted literal set;
// Kind recovers the Base / Tilde / Product view.
//
// Ordering: fewer literals first, then lexicographic over the sorted
// literals (a plain literal sorts before its inverse).
class ExperimentTerm {
 public:
  enum class Kind { base, tilde, product };

  // Throws std::domain_error for an invalid symbol.
  static ExperimentTerm base(std::string symbol);

  Kind kind() const noexcept;
  std::span<const Literal> literals() const noexcept { return literals_; }
  // Number of literals; 1 unless this is a product.
  std::size_t size() const noexcept { return literals_.size(); }
  bool is_literal() const noexcept { return literals_.size() == 1; }

  friend std::strong_ordering operator<=>(const ExperimentTerm& a, const ExperimentTerm& b);
  friend bool operator==(const ExperimentTerm&, const ExperimentTerm&) = default;

 private:
  explicit ExperimentTerm(std::vector<Literal> sorted_unique) : literals_(std::move(sorted_unique)) {}

  friend ExperimentTerm tilde(const ExperimentTerm&);
  friend ExperimentTerm product(std::span<const ExperimentTerm>);
  friend ExperimentTerm from_literals(std::vector<Literal>);

  std::vector<Literal> literals_;
};

ExperimentTerm tilde(const ExperimentTerm& t);
// Flattened, deduplicated product. product({t}) == t.
// Throws std::domain_error on an empty family.
ExperimentTerm product(std::span<const ExperimentTerm> factors);
ExperimentTerm product(std::initializer_list<ExperimentTerm> factors);
// The canonical term whose literal set is `literals` (any order, duplicates
// allowed). Throws std::domain_error if empty or a symbol is invalid.
ExperimentTerm from_literals(std::vector<Literal> literals);
ExperimentTerm literal_term(const Literal& lit);

// Every canonical term over {b, ~b : b in base}: all non-empty subsets of
// the 2n literals, 2^(2n) - 1 terms, sorted. Requires the unit symbol in
// `base` and at most kMaxEnumerableSymbols symbols; std::domain_error
// otherwise.
inline constexpr std::size_t kMaxEnumerableSymbols = 10;
std::vector<ExperimentTerm> enumerate_terms(std::span<const std::string> base);

// Unnormalized syntax tree, as written. Canonicalization folds it into an
// ExperimentTerm.
struct TermTree {
  enum class Kind { symbol, tilde, product };

  Kind kind = Kind::symbol;
  std::string symbol;              // Kind::symbol
  std::vector<TermTree> children;  // one for tilde, >= 1 for product

  static TermTree leaf(std::string symbol);
  static TermTree inverse(TermTree inner);
  static TermTree prod(std::vector<TermTree> factors);
};

ExperimentTerm canonicalize(const TermTree& tree);

// Grammar: term := symbol | '~' term | 'prod(' term (',' term)* ')'
// Throws ParseError (line 0).
TermTree parse_term_tree(std::string_view text);
ExperimentTerm parse_term(std::string_view text);

// "a", "~a", "prod(a, ~b)". parse_term(to_string(t)) == t.
std::string to_string(const ExperimentTerm& t);
std::string to_string(const TermTree& t);
std::ostream& operator<<(std::ostream& os, const ExperimentTerm& t);

}  // namespace subprob
