#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qadio {

struct PolynomialLimits {
  std::uint32_t max_exponent = 8;
  std::size_t max_variables = 8;
};

struct Monomial {
  std::int64_t coefficient = 0;
  std::vector<std::uint32_t> exponents;

  std::uint64_t degree() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Strict "comes first" order used for canonical monomial lists: higher total
/// degree first, then lexicographically larger exponent vectors first.
bool graded_lex_before(std::span<const std::uint32_t> a,
                       std::span<const std::uint32_t> b);

/// Merges like terms, drops zero coefficients and sorts with
/// graded_lex_before. Throws OverflowError if a merged coefficient does not
/// fit in 64 bits and DomainError if an exponent vector has the wrong length.
std::vector<Monomial> canonicalize(std::vector<Monomial> terms,
                                   std::size_t num_variables);

/// Canonical integer-coefficient polynomial D(x_1..x_K). Immutable.
class Polynomial {
 public:
  /// Canonicalizes `terms`. `variable_names` fixes K and must be non-empty.
  Polynomial(std::vector<std::string> variable_names,
             std::vector<Monomial> terms);

  std::size_t num_variables() const { return names_.size(); }
  const std::vector<std::string>& variable_names() const { return names_; }
  const std::vector<Monomial>& monomials() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t max_exponent() const;

  /// Exact value at a non-negative integer point. Throws DomainError on
  /// arity mismatch and OverflowError if the value leaves int64 range.
  std::int64_t evaluate(std::span<const std::uint32_t> point) const;

  /// D(point)^2. Throws OverflowError when |D| >= 2^32.
  std::uint64_t squared(std::span<const std::uint32_t> point) const;

  /// Single-line normalized form, e.g. "x*y + x + 4*y - 11". Parsing the
  /// result reproduces this polynomial including its variable order.
  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Monomial> terms_;
};

/// Returns `poly` with its monomials re-canonicalized (idempotent).
Polynomial canonicalize(const Polynomial& poly);

/// Sum of two polynomials over the same variables (monomial concatenation
/// followed by canonicalization).
Polynomial add(const Polynomial& lhs, const Polynomial& rhs);

/// Parses an equation such as "x*y + x + 4y - 11 = 0". Variables are ordered by
/// first appearance; "lhs = rhs" becomes lhs - rhs.
Polynomial parse_polynomial(std::string_view text,
                            const PolynomialLimits& limits = {});

}  // namespace qadio
