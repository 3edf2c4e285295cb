// Integer Laurent polynomials in one variable v, exact arithmetic.
//
// A polynomial is a sorted term list (exponent, nonzero coefficient); the
// zero polynomial is the empty list. deg/mindeg return empty optionals on
// zero rather than sentinel integers.

#pragma once

#include <initializer_list>
#include <optional>
#include <string>

#include "cactusj/common.hpp"
#include "cactusj/errors.hpp"

namespace cactusj {

class Laurent {
 public:
  Laurent() = default;
  Laurent(long long c) {  // NOLINT: implicit by design, scalars embed
    if (c != 0) terms_.emplace_back(0, int_of(c));
  }
  explicit Laurent(const Int& c) {
    if (c != 0) terms_.emplace_back(0, c);
  }

  // c * v^e
  static Laurent monomial(const Int& c, int e);
  // v^e
  static Laurent v(int e = 1) { return monomial(1, e); }
  static Laurent from_terms(std::initializer_list<std::pair<int, long long>> ts);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
  }

  std::optional<int> deg() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.back().first;
  }
  std::optional<int> mindeg() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().first;
  }

  const Int& coeff(int e) const;        // 0 if absent
  const Int& leading_coeff() const;     // pre: nonzero
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<std::pair<int, Int>>& terms() const { return terms_; }

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  bool operator==(const Laurent& o) const { return terms_ == o.terms_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  // Multiply by v^e.
  Laurent shifted(int e) const;
  // Exponent negation v -> v^{-1} (the bar involution on scalars).
  Laurent bar() const;

  // Evaluation. At 0 the polynomial must have mindeg >= 0.
  Rat eval(const Rat& point) const;
  Int eval_at_one() const;
  Int eval_at_zero() const;  // throws NegativeExponentAtZero

  // Exact division; throws InternalAssertion if the division is not exact.
  Laurent divexact(const Laurent& d) const;

  // gcd of coefficients (nonnegative); 0 for the zero polynomial.
  Int content() const;
  Laurent primitive_part() const;  // *this / content, sign kept

  // gcd over Q up to units, returned primitive with positive leading
  // coefficient; gcd(0, b) = primitive(b).
  static Laurent gcd(const Laurent& a, const Laurent& b);

  std::string str() const;  // "v^-2 + 2 - 3v^3" style, ascending exponents

 private:
  std::vector<std::pair<int, Int>> terms_;
  void add_term(int e, const Int& c);
};

}  // namespace cactusj
