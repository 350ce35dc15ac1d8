#include "qadio/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "checked.hpp"
#include "qadio/error.hpp"

namespace qadio {

using detail::int128;

std::uint64_t Monomial::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), std::uint64_t{0});
}

bool graded_lex_before(std::span<const std::uint32_t> a,
                       std::span<const std::uint32_t> b) {
  const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Monomial> canonicalize(std::vector<Monomial> terms,
                                   std::size_t num_variables) {
  for (const auto& t : terms) {
    if (t.exponents.size() != num_variables) {
      throw DomainError("monomial has " + std::to_string(t.exponents.size()) +
                        " exponents, expected " + std::to_string(num_variables));
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Monomial& a, const Monomial& b) {
                     return graded_lex_before(a.exponents, b.exponents);
                   });
  std::vector<Monomial> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exponents == t.exponents) {
      out.back().coefficient =
          detail::checked_add64(out.back().coefficient, t.coefficient);
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Monomial& m) { return m.coefficient == 0; });
  return out;
}

Polynomial::Polynomial(std::vector<std::string> variable_names,
                       std::vector<Monomial> terms)
    : names_(std::move(variable_names)) {
  if (names_.empty()) {
    throw DomainError("a polynomial needs at least one variable");
  }
  terms_ = qadio::canonicalize(std::move(terms), names_.size());
}

std::uint32_t Polynomial::max_exponent() const {
  std::uint32_t e = 0;
  for (const auto& t : terms_) {
    for (auto x : t.exponents) e = std::max(e, x);
  }
  return e;
}

std::int64_t Polynomial::evaluate(std::span<const std::uint32_t> point) const {
  if (point.size() != names_.size()) {
    throw DomainError("point has " + std::to_string(point.size()) +
                      " components, polynomial has " +
                      std::to_string(names_.size()) + " variables");
  }
  int128 total = 0;
  for (const auto& t : terms_) {
    int128 value = t.coefficient;
    for (std::size_t k = 0; k < point.size() && value != 0; ++k) {
      for (std::uint32_t e = 0; e < t.exponents[k]; ++e) {
        value = detail::checked_mul(value, point[k]);
      }
    }
    total = detail::checked_add(total, value);
  }
  return detail::narrow_int64(total);
}

std::uint64_t Polynomial::squared(std::span<const std::uint32_t> point) const {
  const std::int64_t d = evaluate(point);
  const int128 mag = d < 0 ? -static_cast<int128>(d) : static_cast<int128>(d);
  if (mag >= (int128{1} << 32)) {
    throw OverflowError("D^2 does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(mag * mag);
}

namespace {

void write_monomial_body(std::ostringstream& os, const Monomial& m,
                         const std::vector<std::string>& names,
                         std::uint64_t magnitude) {
  bool first = true;
  if (magnitude != 1 || m.degree() == 0) {
    os << magnitude;
    first = false;
  }
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (m.exponents[k] == 0) continue;
    if (!first) os << '*';
    os << names[k];
    if (m.exponents[k] > 1) os << '^' << m.exponents[k];
    first = false;
  }
}

// True if emitting the monomials in order introduces variables as 0..K-1.
bool appearance_matches(const std::vector<Monomial>& terms, std::size_t k) {
  std::size_t next = 0;
  for (const auto& t : terms) {
    for (std::size_t v = 0; v < k; ++v) {
      if (t.exponents[v] == 0) continue;
      if (v > next) return false;
      if (v == next) ++next;
    }
  }
  return next == k;
}

}  // namespace

std::string Polynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (!appearance_matches(terms_, names_.size())) {
    // A zero-coefficient product pins the variable order and count.
    os << '0';
    for (const auto& n : names_) os << '*' << n;
    first = false;
  }
  for (const auto& t : terms_) {
    const bool negative = t.coefficient < 0;
    const std::uint64_t magnitude =
        negative ? 0 - static_cast<std::uint64_t>(t.coefficient)
                 : static_cast<std::uint64_t>(t.coefficient);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    write_monomial_body(os, t, names_, magnitude);
    first = false;
  }
  return os.str();
}

Polynomial canonicalize(const Polynomial& poly) {
  return Polynomial(poly.variable_names(), poly.monomials());
}

Polynomial add(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.variable_names() != rhs.variable_names()) {
    throw DomainError("cannot add polynomials over different variables");
  }
  auto terms = lhs.monomials();
  terms.insert(terms.end(), rhs.monomials().begin(), rhs.monomials().end());
  return Polynomial(lhs.variable_names(), std::move(terms));
}

}  // namespace qadio
