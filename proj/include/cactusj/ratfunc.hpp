// Rational functions in v with exact integer coefficients, kept in a
// canonical reduced form so equality is structural:
//   - num and den share no polynomial factor over Q (including powers of v),
//   - both are ordinary polynomials (exponents >= 0) and at least one has a
//     nonzero constant term,
//   - gcd(content(num), content(den)) = 1 and den has positive leading
//     coefficient,
//   - num = 0 implies den = 1.

#pragma once

#include <string>
#include <vector>

#include "cactusj/laurent.hpp"

namespace cactusj {

class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(long long c) : num_(c), den_(1) {}  // NOLINT: implicit scalar embed
  RatFunc(const Laurent& p);                  // NOLINT: implicit ring embed
  RatFunc(const Laurent& num, const Laurent& den);  // normalizes; den != 0
  explicit RatFunc(const Rat& q);

  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc inv() const;  // throws DivisionByZero on zero

  bool operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  // True iff the reduced denominator vanishes at none of the given points.
  bool member_localized(const std::vector<Rat>& forbidden_points) const;

  // Value at a point; throws PoleAtPoint when the denominator vanishes.
  Rat specialize(const Rat& point) const;

  // Integer content of the denominator (1 when the denominator is primitive);
  // reported by the conjecture checker alongside localization membership.
  Int den_content() const { return den_.is_one() ? Int(1) : den_.content(); }

  // The Laurent polynomial this reduces to, if den = c*v^k.
  bool as_laurent(Laurent* out) const;

  std::string str() const;

 private:
  Laurent num_, den_;
  void normalize();
};

}  // namespace cactusj
