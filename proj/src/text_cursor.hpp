#pragma once

// Small scanner shared by the expression parsers. Columns are 1-based.

#include <cctype>
#include <string>
#include <string_view>

#include "subprob/rational.hpp"

namespace subprob::detail {

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class TextCursor {
 public:
  explicit TextCursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!consume(c)) {
      fail(std::string("expected '") + c + "'" + found_suffix());
    }
  }

  // Consumes `word` only when it is not followed by an identifier character.
  bool consume_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    std::size_t after = pos_ + word.size();
    if (after < text_.size() && is_ident_char(text_[after])) return false;
    pos_ = after;
    return true;
  }

  std::string identifier() {
    skip_space();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail("expected identifier" + found_suffix());
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational rational() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == '/')) {
      ++pos_;
    }
    if (start == pos_) fail("expected number" + found_suffix());
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      throw ParseError(0, start + 1, e.what());
    }
  }

  std::size_t column() {
    skip_space();
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& message) { throw ParseError(0, column(), message); }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing text" + found_suffix());
  }

 private:
  std::string found_suffix() {
    skip_space();
    if (pos_ >= text_.size()) return ", found end of input";
    return std::string(", found '") + text_[pos_] + "'";
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace subprob::detail
