#include "cactusj/laurent.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cactusj {

namespace {
const Int kZero = 0;
}

Laurent Laurent::monomial(const Int& c, int e) {
  Laurent r;
  if (c != 0) r.terms_.emplace_back(e, c);
  return r;
}

Laurent Laurent::from_terms(std::initializer_list<std::pair<int, long long>> ts) {
  Laurent r;
  for (const auto& [e, c] : ts) r += monomial(int_of(c), e);
  return r;
}

const Int& Laurent::coeff(int e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const auto& t, int x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return kZero;
}

const Int& Laurent::leading_coeff() const {
  if (terms_.empty()) throw InternalAssertion("leading_coeff of zero polynomial");
  return terms_.back().second;
}

void Laurent::add_term(int e, const Int& c) {
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const auto& t, int x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {e, c});
  }
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<std::pair<int, Int>> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      Int c = terms_[i].second + o.terms_[j].second;
      if (c != 0) out.emplace_back(terms_[i].first, std::move(c));
      ++i, ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1) {  // common case: monomial scale
    r = b.shifted(a.terms_[0].first);
    for (auto& [e, c] : r.terms_) c *= a.terms_[0].second;
    return r;
  }
  std::map<int, Int> acc;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
  for (auto& [e, c] : acc)
    if (c != 0) r.terms_.emplace_back(e, std::move(c));
  return r;
}

Laurent Laurent::shifted(int e) const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.first += e;
  return r;
}

Laurent Laurent::bar() const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.first = -t.first;
  std::reverse(r.terms_.begin(), r.terms_.end());
  return r;
}

Rat Laurent::eval(const Rat& point) const {
  if (point == 0) return Rat(eval_at_zero());
  // Horner on the ordinary part, then multiply back the v^mindeg shift.
  Rat acc = 0;
  int prev = 0;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (it != terms_.rbegin()) {
      for (int k = it->first; k < prev; ++k) acc *= point;  // acc *= point^(prev-e)
    }
    acc += Rat(it->second);
    prev = it->first;
  }
  if (terms_.empty()) return Rat(0);
  int m = terms_.front().first;
  if (m > 0)
    for (int k = 0; k < m; ++k) acc *= point;
  else
    for (int k = 0; k < -m; ++k) acc /= point;
  acc.canonicalize();
  return acc;
}

Int Laurent::eval_at_one() const {
  Int s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

Int Laurent::eval_at_zero() const {
  if (!terms_.empty() && terms_.front().first < 0)
    throw NegativeExponentAtZero("evaluating " + str() + " at v=0");
  return coeff(0);
}

Laurent Laurent::divexact(const Laurent& d) const {
  if (d.is_zero()) throw DivisionByZero("Laurent divexact by zero");
  if (is_zero()) return Laurent();
  // Shift both to ordinary polynomials, long-divide, shift back.
  int sn = *mindeg(), sd = *d.mindeg();
  Laurent num = shifted(-sn), den = d.shifted(-sd);
  Laurent q;
  while (!num.is_zero()) {
    int en = *num.deg(), ed = *den.deg();
    if (en < ed) throw InternalAssertion("inexact Laurent division (degree)");
    Int c, rem;
    mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), num.leading_coeff().get_mpz_t(),
                den.leading_coeff().get_mpz_t());
    if (rem != 0) throw InternalAssertion("inexact Laurent division (coefficient)");
    Laurent m = monomial(c, en - ed);
    q += m;
    num -= m * den;
    if (!num.is_zero() && *num.deg() >= en)
      throw InternalAssertion("Laurent division did not reduce degree");
  }
  return q.shifted(sn - sd);
}

Int Laurent::content() const {
  Int g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Laurent Laurent::primitive_part() const {
  if (is_zero()) return *this;
  Int g = content();
  Laurent r = *this;
  for (auto& [e, c] : r.terms_) c /= g;
  return r;
}

namespace {

// Pseudo-remainder of a by b (both ordinary, deg a >= deg b, b != 0):
// lc(b)^(deg a - deg b + 1) * a = q*b + r. The trailing rescale keeps the
// exact power even when a reduction step drops the degree by more than one.
Laurent prem(Laurent a, const Laurent& b) {
  int db = *b.deg();
  const Int& lb = b.leading_coeff();
  int target = *a.deg() - db + 1;
  int steps = 0;
  while (!a.is_zero() && *a.deg() >= db) {
    int da = *a.deg();
    Int la = a.leading_coeff();
    a = a * Laurent(lb) - b.shifted(da - db) * Laurent(la);
    ++steps;
    if (!a.is_zero() && *a.deg() >= da)
      throw InternalAssertion("prem did not reduce degree");
  }
  for (; steps < target; ++steps) a = a * Laurent(lb);
  return a;
}

}  // namespace

Laurent Laurent::gcd(const Laurent& a, const Laurent& b) {
  auto canon = [](Laurent p) {
    if (p.is_zero()) return p;
    p = p.shifted(-*p.mindeg()).primitive_part();
    if (p.leading_coeff() < 0) p = -p;
    return p;
  };
  Laurent x = canon(a), y = canon(b);
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (*x.deg() == 0 || *y.deg() == 0) return Laurent(1);
  if (x == y) return x;
  if (*x.deg() < *y.deg()) std::swap(x, y);
  // Subresultant PRS on primitive parts; coefficient growth is controlled by
  // the g,h divisors and the result is taken primitive at the end.
  Int g = 1, h = 1;
  while (true) {
    int d = *x.deg() - *y.deg();
    Laurent r = prem(x, y);
    if (r.is_zero()) return canon(y);
    if (*r.deg() == 0) return Laurent(1);
    Int divisor = g;
    for (int k = 0; k < d; ++k) divisor *= h;
    x = y;
    y = r.divexact(Laurent(divisor));
    g = x.leading_coeff();
    // h = h^{1-d} * g^d
    if (d == 0) {
      // h unchanged
    } else {
      Int gn = 1;
      for (int k = 0; k < d; ++k) gn *= g;
      if (d == 1) {
        h = gn;
      } else {
        Int hd = 1;
        for (int k = 0; k < d - 1; ++k) hd *= h;
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), gn.get_mpz_t(), hd.get_mpz_t());
        if (rem != 0) throw InternalAssertion("subresultant h not exact");
        h = q;
      }
    }
  }
}

std::string Laurent::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Int a = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (a != 1 || e == 0) os << a.get_str();
    if (e != 0) {
      if (a != 1) os << "*";
      os << "v";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace cactusj
