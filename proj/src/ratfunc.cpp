#include "cactusj/ratfunc.hpp"

#include <sstream>

namespace cactusj {

RatFunc::RatFunc(const Laurent& p) : num_(p), den_(1) { normalize(); }

RatFunc::RatFunc(const Laurent& num, const Laurent& den) : num_(num), den_(den) {
  if (den.is_zero()) throw DivisionByZero("RatFunc with zero denominator");
  normalize();
}

RatFunc::RatFunc(const Rat& q)
    : num_(Laurent(Int(q.get_num()))), den_(Laurent(Int(q.get_den()))) {
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Laurent(1);
    return;
  }
  // Fold out the common v-power first so both parts are ordinary with at
  // least one nonzero constant term.
  int e = *num_.mindeg() - *den_.mindeg();
  Laurent n = num_.shifted(-*num_.mindeg());
  Laurent d = den_.shifted(-*den_.mindeg());
  Laurent g = Laurent::gcd(n, d);
  if (!g.is_one()) {
    n = n.divexact(g);
    d = d.divexact(g);
  }
  Int cn = n.content(), cd = d.content(), c;
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cn.get_mpz_t());
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cd.get_mpz_t());
  if (c > 1) {
    n = n.divexact(Laurent(c));
    d = d.divexact(Laurent(c));
  }
  if (d.leading_coeff() < 0) {
    n = -n;
    d = -d;
  }
  if (e >= 0)
    num_ = n.shifted(e), den_ = d;
  else
    num_ = n, den_ = d.shifted(-e);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }

RatFunc RatFunc::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  return RatFunc(den_, num_);
}

bool RatFunc::member_localized(const std::vector<Rat>& forbidden_points) const {
  for (const Rat& p : forbidden_points)
    if (den_.eval(p) == 0) return false;
  return true;
}

Rat RatFunc::specialize(const Rat& point) const {
  Rat d = den_.eval(point);
  if (d == 0)
    throw PoleAtPoint("pole of " + str() + " at v=" + std::string(Rat(point).get_str()));
  Rat r = num_.eval(point) / d;
  r.canonicalize();
  return r;
}

bool RatFunc::as_laurent(Laurent* out) const {
  if (den_.term_count() != 1) return false;
  // den = c * v^k with c > 0: the value is a Laurent polynomial iff c divides
  // the numerator's content.
  const auto& [k, c] = den_.terms()[0];
  Laurent shifted_num = num_.shifted(-k);
  if (c != 1) {
    for (const auto& [e, cc] : shifted_num.terms())
      if (!mpz_divisible_p(cc.get_mpz_t(), c.get_mpz_t())) return false;
    shifted_num = shifted_num.divexact(Laurent(c));
  }
  if (out) *out = shifted_num;
  return true;
}

std::string RatFunc::str() const {
  if (den_.is_one()) return num_.str();
  std::ostringstream os;
  os << "(" << num_.str() << ")/(" << den_.str() << ")";
  return os.str();
}

}  // namespace cactusj
