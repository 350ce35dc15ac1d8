#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "checked.hpp"
#include "qadio/error.hpp"
#include "qadio/polynomial.hpp"

namespace qadio {
namespace {

enum class Tok { number, ident, plus, minus, star, caret, lparen, rparen, equals, end };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
  std::int64_t value = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '.' || s[j] == 'e' || s[j] == 'E')) {
        throw ParseError("non-integer literal", i);
      }
      Token t{Tok::number, i, s.substr(i, j - i)};
      auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + j, t.value);
      if (ec == std::errc::result_out_of_range) {
        throw OverflowError("integer literal '" + std::string(t.text) +
                            "' does not fit in 64 bits at position " +
                            std::to_string(i));
      }
      out.push_back(t);
      i = j;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::ident, i, s.substr(i, j - i)});
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '=': kind = Tok::equals; break;
      case '.': throw ParseError("non-integer literal", i);
      default:
        throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
    }
    out.push_back({kind, i, s.substr(i, 1)});
    ++i;
  }
  out.push_back({Tok::end, s.size(), {}});
  return out;
}

using Terms = std::vector<Monomial>;

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<std::string> names,
         const PolynomialLimits& limits)
      : toks_(std::move(tokens)), names_(std::move(names)), limits_(limits) {}

  Terms parse_equation() {
    Terms lhs = parse_sum();
    if (peek().kind == Tok::equals) {
      advance();
      Terms rhs = parse_sum();
      for (auto& m : rhs) {
        m.coefficient = detail::checked_mul64(m.coefficient, -1);
      }
      lhs.insert(lhs.end(), rhs.begin(), rhs.end());
      lhs = canonicalize(std::move(lhs), k());
    }
    if (peek().kind != Tok::end) {
      throw ParseError("unexpected '" + std::string(peek().text) + "'",
                       peek().pos);
    }
    return lhs;
  }

 private:
  std::size_t k() const { return names_.size(); }
  const Token& peek() const { return toks_[i_]; }
  const Token& advance() { return toks_[i_++]; }

  Terms constant(std::int64_t c) const {
    return {Monomial{c, std::vector<std::uint32_t>(k(), 0)}};
  }

  Terms multiply(const Terms& a, const Terms& b) const {
    Terms out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
      for (const auto& y : b) {
        Monomial m{detail::checked_mul64(x.coefficient, y.coefficient),
                   x.exponents};
        for (std::size_t v = 0; v < k(); ++v) m.exponents[v] += y.exponents[v];
        out.push_back(std::move(m));
      }
    }
    return canonicalize(std::move(out), k());
  }

  Terms parse_sum() {
    Terms acc = parse_product();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool minus = advance().kind == Tok::minus;
      Terms rhs = parse_product();
      if (minus) {
        for (auto& m : rhs) m.coefficient = detail::checked_mul64(m.coefficient, -1);
      }
      acc.insert(acc.end(), rhs.begin(), rhs.end());
      acc = canonicalize(std::move(acc), k());
    }
    return acc;
  }

  Terms parse_product() {
    Terms acc = parse_unary();
    for (;;) {
      const Tok kind = peek().kind;
      if (kind == Tok::star) {
        advance();
      } else if (kind != Tok::ident && kind != Tok::lparen) {
        // Implicit multiplication only before a variable or a parenthesis.
        break;
      }
      acc = multiply(acc, parse_unary());
    }
    return acc;
  }

  Terms parse_unary() {
    if (peek().kind == Tok::minus) {
      advance();
      Terms t = parse_unary();
      for (auto& m : t) m.coefficient = detail::checked_mul64(m.coefficient, -1);
      return t;
    }
    if (peek().kind == Tok::plus) {
      advance();
      return parse_unary();
    }
    return parse_power();
  }

  Terms parse_power() {
    Terms base = parse_primary();
    if (peek().kind != Tok::caret) return base;
    advance();
    const Token& e = peek();
    if (e.kind == Tok::minus) {
      throw ParseError("negative exponent", e.pos);
    }
    if (e.kind != Tok::number) {
      throw ParseError("exponent must be a non-negative integer literal", e.pos);
    }
    advance();
    if (e.value > static_cast<std::int64_t>(limits_.max_exponent)) {
      throw ParseError("exponent " + std::to_string(e.value) +
                           " exceeds the limit of " +
                           std::to_string(limits_.max_exponent),
                       e.pos);
    }
    Terms result = constant(1);
    for (std::int64_t n = 0; n < e.value; ++n) result = multiply(result, base);
    return result;
  }

  Terms parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number:
        advance();
        return constant(t.value);
      case Tok::ident: {
        advance();
        Terms out = constant(1);
        for (std::size_t v = 0; v < k(); ++v) {
          if (names_[v] == t.text) out[0].exponents[v] = 1;
        }
        return out;
      }
      case Tok::lparen: {
        advance();
        Terms inner = parse_sum();
        if (peek().kind != Tok::rparen) {
          throw ParseError("expected ')'", peek().pos);
        }
        advance();
        return inner;
      }
      case Tok::end:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::vector<std::string> names_;
  PolynomialLimits limits_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text,
                            const PolynomialLimits& limits) {
  auto tokens = tokenize(text);
  std::vector<std::string> names;
  std::size_t equals = 0;
  for (const auto& t : tokens) {
    if (t.kind == Tok::equals && ++equals > 1) {
      throw ParseError("more than one '='", t.pos);
    }
    if (t.kind != Tok::ident) continue;
    if (std::find(names.begin(), names.end(), t.text) == names.end()) {
      names.emplace_back(t.text);
    }
  }
  if (names.empty()) {
    throw DomainError("equation has no variables");
  }
  if (names.size() > limits.max_variables) {
    throw DomainError("equation has " + std::to_string(names.size()) +
                      " variables, limit is " +
                      std::to_string(limits.max_variables));
  }
  Parser parser(std::move(tokens), names, limits);
  Polynomial poly(std::move(names), parser.parse_equation());
  if (poly.max_exponent() > limits.max_exponent) {
    throw DomainError("exponent " + std::to_string(poly.max_exponent()) +
                      " exceeds the limit of " +
                      std::to_string(limits.max_exponent));
  }
  return poly;
}

}  // namespace qadio
