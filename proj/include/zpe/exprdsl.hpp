#pragma once

// Text form of OperatorPoly.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := ['-'] (scalar | atom | '(' expr ')')
//   scalar := INT ['/' INT] ['i'] | INT '.' INT ['i'] | 'i' | 'pi' | 'sqrt' '(' rational ')'
//   atom   := 'a[' r ',' m ']' | 'ad[' r ',' m ']'      r in 0..3, m >= 0
//
// Whitespace between tokens is ignored. `ad` is the daggered symbol. Products
// keep their written order; nothing is reordered while parsing.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zpe/error.hpp"
#include "zpe/exact.hpp"
#include "zpe/opalgebra.hpp"

namespace zpe {

inline constexpr std::size_t kMaxExpressionBytes = 64 * 1024;

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  OperatorPoly parse_all() {
    if (text_.size() > kMaxExpressionBytes) {
      throw ParseError(1, 1, "expression longer than " + std::to_string(kMaxExpressionBytes) + " bytes");
    }
    skip_ws();
    if (at_end()) fail("empty expression");
    OperatorPoly p = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return p;
  }

 private:
  OperatorPoly expr() {
    OperatorPoly sum = term();
    for (;;) {
      skip_ws();
      if (match('+')) {
        sum += term();
      } else if (match('-')) {
        sum -= term();
      } else {
        return sum;
      }
    }
  }

  OperatorPoly term() {
    OperatorPoly prod = factor();
    for (;;) {
      skip_ws();
      if (!match('*')) return prod;
      prod = prod * factor();
    }
  }

  OperatorPoly factor() {
    skip_ws();
    if (at_end()) fail("expected a factor");
    if (match('-')) return -factor();
    if (match('(')) {
      OperatorPoly inner = expr();
      skip_ws();
      if (!match(')')) fail("expected ')'");
      return inner;
    }
    const char ch = peek();
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return OperatorPoly(number());
    if (std::isalpha(static_cast<unsigned char>(ch))) return word_factor();
    fail(std::string("unexpected '") + ch + "'");
  }

  OperatorPoly word_factor() {
    const std::size_t start = pos_;
    std::string name;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) name += text_[pos_++];
    if (name == "i") return OperatorPoly(Scalar::i());
    if (name == "pi") return OperatorPoly(Scalar::pi());
    if (name == "sqrt") {
      skip_ws();
      if (!match('(')) fail("expected '(' after sqrt");
      skip_ws();
      const std::size_t arg_start = pos_;
      std::string lit = rational_literal();
      skip_ws();
      if (!match(')')) fail("expected ')' closing sqrt");
      Rational q = parse_rational(lit);
      if (q < 0) fail_at(arg_start, "sqrt of a negative number");
      return OperatorPoly(Scalar::sqrt(q));
    }
    if (name == "a" || name == "ad") return atom(name == "ad", start);
    fail_at(start, "unknown identifier '" + name + "'");
  }

  OperatorPoly atom(bool dagger, std::size_t start) {
    skip_ws();
    if (!match('[')) fail_at(start, "malformed atom: expected '['");
    skip_ws();
    const std::size_t pol_pos = pos_;
    const unsigned long long pol = integer("polarization index");
    skip_ws();
    if (!match(',')) fail("malformed atom: expected ','");
    skip_ws();
    const unsigned long long mode = integer("mode index");
    skip_ws();
    if (!match(']')) fail("malformed atom: expected ']'");
    if (pol > 3) fail_at(pol_pos, "polarization index " + std::to_string(pol) + " outside 0..3");
    return OperatorPoly(LadderSymbol{static_cast<std::size_t>(mode), static_cast<int>(pol), dagger});
  }

  unsigned long long integer(const char* what) {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail(std::string("malformed atom: expected ") + what);
    if (pos_ - start > 18) fail_at(start, std::string(what) + " too large");
    return std::stoull(std::string(text_.substr(start, pos_ - start)));
  }

  std::string rational_literal() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!at_end() && (peek() == '.' || peek() == '/')) {
      ++pos_;
      const std::size_t frac = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (frac == pos_) fail("malformed number");
    }
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  Scalar number() {
    const std::size_t start = pos_;
    std::string lit = rational_literal();
    Rational q;
    try {
      q = parse_rational(lit);
    } catch (const Error&) {
      fail_at(start, "malformed number '" + lit + "'");
    }
    // An imaginary suffix binds only when it is not the start of an identifier.
    if (!at_end() && peek() == 'i' &&
        (pos_ + 1 >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return Scalar(ComplexRational(Rational(0), q));
    }
    return Scalar(q);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool match(char c) {
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string format_symbol(const LadderSymbol& s, bool unicode) {
  std::string head = s.dagger ? (unicode ? "a†" : "ad") : "a";
  return head + "[" + std::to_string(s.pol) + "," + std::to_string(s.mode) + "]";
}

}  // namespace detail

inline OperatorPoly parse(std::string_view text) { return detail::ExprParser(text).parse_all(); }

/// Canonical text: terms in word order, exact coefficients. With unicode set,
/// daggers print as a†; that form is for display only and does not parse.
inline std::string format(const OperatorPoly& p, bool unicode = false) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    std::string word;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k) word += "*";
      word += detail::format_symbol(w[k], unicode);
    }
    bool negative = false;
    std::string body;
    if (c.terms().size() == 1) {
      const auto& [unit, z] = *c.terms().begin();
      auto [neg, text] = detail::format_unit_term(unit, z);
      negative = neg;
      if (word.empty()) body = text;
      else body = text == "1" ? word : text + "*" + word;
    } else {
      body = word.empty() ? to_string(c) : to_string(c) + "*" + word;
    }
    if (first) out += negative ? "-" + body : body;
    else out += negative ? " - " + body : " + " + body;
    first = false;
  }
  return out;
}

struct CorpusEntry {
  std::size_t line = 0;
  std::string text;
  OperatorPoly poly;
};

/// One expression per line; '#' starts a comment. Errors report file lines.
inline std::vector<CorpusEntry> parse_corpus(std::string_view content) {
  std::vector<CorpusEntry> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    ++line_no;
    std::string_view line = content.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
    if (!blank) {
      try {
        out.push_back({line_no, std::string(line), parse(line)});
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.column(), e.message());
      }
    }
    if (end == content.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace zpe
