#ifndef DAOLAB_PARSE_HPP
#define DAOLAB_PARSE_HPP

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "polynomial.hpp"

namespace daolab {

/// Syntax error with a 1-based source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(msg), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Character cursor with line/column bookkeeping, shared by the polynomial
/// grammar and the session grammar.
class Cursor {
 public:
  explicit Cursor(std::string_view text, std::size_t line = 1, std::size_t column = 1)
      : text_(text), line_(line), column_(column) {}

  bool eof() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() {
    skip_space();
    return advance();
  }
  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view w) {
    skip_space();
    if (text_.substr(pos_, w.size()) != w) return false;
    std::size_t end = pos_ + w.size();
    if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) return false;
    for (std::size_t i = 0; i < w.size(); ++i) advance();
    return true;
  }

  bool at_identifier() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string identifier() {
    if (!at_identifier()) fail("expected identifier");
    std::string s;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
      s += advance();
    return s;
  }
  bool at_number() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  mpz_class number() {
    if (!at_number()) fail("expected number");
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) s += advance();
    return mpz_class(s);
  }
  long small_number() {
    mpz_class v = number();
    if (v > 1000000) fail("number too large");
    return v.get_si();
  }

  [[noreturn]] void fail(const std::string& msg) {
    skip_space();
    throw ParseError(msg, line_, column_);
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  std::size_t position() const { return pos_; }

 private:
  char advance() {
    if (pos_ >= text_.size()) return '\0';
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }
  void skip_space() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
      if (pos_ < text_.size() && text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      break;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

/// Recursive-descent reader for the canonical polynomial text form:
/// sums of terms, `*` optional between factors, `^` for powers,
/// coefficients as integers or `a/b`, parentheses allowed.
template <class Field>
class PolynomialReader {
 public:
  using Poly = Polynomial<Field>;

  PolynomialReader(RingPtr<Field> ring, Cursor& cur) : ring_(std::move(ring)), cur_(cur) {}

  Poly expression() {
    Poly acc(ring_);
    bool first = true;
    for (;;) {
      bool neg = false;
      if (cur_.accept('-')) {
        neg = true;
      } else if (cur_.accept('+')) {
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
      char c = cur_.peek();
      if (c != '+' && c != '-') break;
    }
    return acc;
  }

 private:
  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (cur_.accept('*')) {
        acc = acc * factor();
        continue;
      }
      if (cur_.accept('/')) {
        mpz_class den = cur_.number();
        const auto& F = ring_->field();
        try {
          acc = acc.scaled(F.from_fraction(1, den));
        } catch (const std::domain_error& e) {
          cur_.fail(e.what());
        }
        continue;
      }
      char c = cur_.peek();
      if (c == '(' || cur_.at_identifier() || cur_.at_number()) {
        acc = acc * factor();
        continue;
      }
      break;
    }
    return acc;
  }

  Poly factor() {
    Poly base = primary();
    if (cur_.accept('^')) {
      long e = cur_.small_number();
      Poly r = Poly::constant(ring_, ring_->field().one());
      for (long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Poly primary() {
    const auto& F = ring_->field();
    if (cur_.accept('-')) return -factor();
    if (cur_.accept('(')) {
      Poly p = expression();
      cur_.expect(')');
      return p;
    }
    if (cur_.at_number()) {
      mpz_class num = cur_.number();
      mpz_class den = 1;
      if (cur_.peek() == '/') {
        cur_.get();
        den = cur_.number();
        if (den == 0) cur_.fail("zero denominator");
      }
      try {
        return Poly::constant(ring_, F.from_fraction(num, den));
      } catch (const std::domain_error& e) {
        cur_.fail(e.what());
      }
    }
    if (cur_.at_identifier()) {
      std::size_t line = cur_.line(), col = cur_.column();
      std::string name = cur_.identifier();
      auto idx = ring_->index_of(name);
      if (!idx) throw ParseError("unknown variable '" + name + "'", line, col);
      return Poly::variable(ring_, *idx);
    }
    cur_.fail("expected a polynomial");
  }

  RingPtr<Field> ring_;
  Cursor& cur_;
};

/// Parse a single polynomial; the whole text must be consumed.
template <class Field>
Polynomial<Field> parse_polynomial(const RingPtr<Field>& ring, std::string_view text) {
  Cursor cur(text);
  PolynomialReader<Field> reader(ring, cur);
  auto p = reader.expression();
  if (!cur.eof()) cur.fail("unexpected trailing input");
  return p;
}

/// Comma-separated list of polynomials.
template <class Field>
std::vector<Polynomial<Field>> parse_polynomials(const RingPtr<Field>& ring, std::string_view text) {
  Cursor cur(text);
  PolynomialReader<Field> reader(ring, cur);
  std::vector<Polynomial<Field>> out;
  if (cur.eof()) return out;
  do {
    out.push_back(reader.expression());
  } while (cur.accept(','));
  if (!cur.eof()) cur.fail("unexpected trailing input");
  return out;
}

}  // namespace daolab

#endif  // DAOLAB_PARSE_HPP
