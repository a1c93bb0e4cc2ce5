#include "emf/cyclotomic.hpp"

#include <algorithm>
#include <vector>

namespace emf {

namespace {

// dense polynomial helpers over Q, index = degree
using Poly = std::vector<Rational>;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// remainder of a by monic b, iterating only b's nonzero coefficients
Poly poly_rem(Poly a, const Poly& b) {
  poly_trim(a);
  const long db = static_cast<long>(b.size()) - 1;
  std::vector<long> support;
  for (long i = 0; i < db; ++i)
    if (b[static_cast<size_t>(i)] != 0) support.push_back(i);
  while (static_cast<long>(a.size()) - 1 >= db) {
    Rational lead = a.back();
    long shift = static_cast<long>(a.size()) - 1 - db;
    if (lead != 0)
      for (long i : support) a[static_cast<size_t>(shift + i)] -= lead * b[static_cast<size_t>(i)];
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

// quotient of a by monic b, exact division assumed by callers that need it
Poly poly_quot(Poly a, const Poly& b) {
  poly_trim(a);
  const long db = static_cast<long>(b.size()) - 1;
  long dq = static_cast<long>(a.size()) - 1 - db;
  if (dq < 0) return {};
  Poly q(static_cast<size_t>(dq) + 1, Rational(0));
  while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
    Rational lead = a.back();
    long shift = static_cast<long>(a.size()) - 1 - db;
    q[static_cast<size_t>(shift)] = lead;
    for (long i = 0; i <= db; ++i) a[static_cast<size_t>(shift + i)] -= lead * b[static_cast<size_t>(i)];
    poly_trim(a);
  }
  return q;
}

// Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d, cached
const Poly& cyclotomic_poly(long n) {
  static std::map<long, Poly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Poly num(static_cast<size_t>(n) + 1, Rational(0));
  num[0] = -1;
  num[static_cast<size_t>(n)] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) num = poly_quot(num, cyclotomic_poly(d));
  return cache.emplace(n, std::move(num)).first->second;
}

Poly to_dense(const std::map<long, Rational>& coeffs, long n) {
  Poly p(static_cast<size_t>(n), Rational(0));
  for (auto& [k, c] : coeffs) p[static_cast<size_t>(k)] = c;
  poly_trim(p);
  return p;
}

}  // namespace

CyclotomicElement CyclotomicElement::root_of_unity(long n, long k) {
  EMF_REQUIRE(n >= 1, ValueError, "root_of_unity: order must be positive, got " << n);
  CyclotomicElement z;
  z.order_ = n;
  z.coeffs_.clear();
  z.coeffs_[((k % n) + n) % n] = 1;
  return z;
}

CyclotomicElement CyclotomicElement::zero_of_order(long n) {
  EMF_REQUIRE(n >= 1, ValueError, "zero_of_order: order must be positive, got " << n);
  CyclotomicElement z;
  z.order_ = n;
  return z;
}

void CyclotomicElement::add_term(long k, const Rational& c) {
  if (c == 0) return;
  k = ((k % order_) + order_) % order_;
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    coeffs_[k] = c;
  } else {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

CyclotomicElement CyclotomicElement::promoted(long newOrder) const {
  EMF_REQUIRE(newOrder % order_ == 0, ValueError,
              "promoted: " << order_ << " does not divide " << newOrder);
  if (newOrder == order_) return *this;
  CyclotomicElement z = zero_of_order(newOrder);
  long f = newOrder / order_;
  for (auto& [k, c] : coeffs_) z.coeffs_[k * f] = c;
  return z;
}

CyclotomicElement CyclotomicElement::operator-() const {
  CyclotomicElement z = *this;
  for (auto& [k, c] : z.coeffs_) c = -c;
  return z;
}

CyclotomicElement& CyclotomicElement::operator+=(const CyclotomicElement& o) {
  long n = lcm_long(order_, o.order_);
  if (n != order_) *this = promoted(n);
  long f = n / o.order_;
  for (auto& [k, c] : o.coeffs_) add_term(k * f, c);
  return *this;
}

CyclotomicElement& CyclotomicElement::operator-=(const CyclotomicElement& o) {
  long n = lcm_long(order_, o.order_);
  if (n != order_) *this = promoted(n);
  long f = n / o.order_;
  for (auto& [k, c] : o.coeffs_) add_term(k * f, -c);
  return *this;
}

CyclotomicElement& CyclotomicElement::operator*=(const CyclotomicElement& o) {
  long n = lcm_long(order_, o.order_);
  const CyclotomicElement a = promoted(n), b = o.promoted(n);
  CyclotomicElement z = zero_of_order(n);
  for (auto& [ka, ca] : a.coeffs_)
    for (auto& [kb, cb] : b.coeffs_) z.add_term(ka + kb, ca * cb);
  return *this = z;
}

CyclotomicElement& CyclotomicElement::operator*=(const Rational& r) {
  if (r == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= r;
  return *this;
}

CyclotomicElement CyclotomicElement::conj() const {
  CyclotomicElement z = zero_of_order(order_);
  for (auto& [k, c] : coeffs_) z.add_term(-k, c);
  return z;
}

CyclotomicElement CyclotomicElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CyclotomicElement r(Rational(1)), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool CyclotomicElement::is_zero() const {
  if (coeffs_.empty()) return true;
  if (coeffs_.size() == 1 && order_ == 1) return false;
  Poly p = poly_rem(to_dense(coeffs_, order_), cyclotomic_poly(order_));
  return p.empty();
}

CyclotomicElement CyclotomicElement::normalized() const {
  Poly p = poly_rem(to_dense(coeffs_, order_), cyclotomic_poly(order_));
  CyclotomicElement z = zero_of_order(order_);
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) z.coeffs_[static_cast<long>(i)] = p[i];
  // fold the exponent lattice: all exponents divisible by g embed in Q(zeta_{n/g})
  while (z.order_ > 1) {
    long g = z.order_;
    for (auto& [k, c] : z.coeffs_) g = gcd_long(g, k);
    if (g == 1) break;
    CyclotomicElement w = zero_of_order(z.order_ / g);
    for (auto& [k, c] : z.coeffs_) w.coeffs_[k / g] = c;
    Poly q = poly_rem(to_dense(w.coeffs_, w.order_), cyclotomic_poly(w.order_));
    w.coeffs_.clear();
    for (size_t i = 0; i < q.size(); ++i)
      if (q[i] != 0) w.coeffs_[static_cast<long>(i)] = q[i];
    z = w;
  }
  return z;
}

bool CyclotomicElement::is_rational() const {
  CyclotomicElement z = normalized();
  return z.coeffs_.empty() || (z.coeffs_.size() == 1 && z.coeffs_.begin()->first == 0);
}

Rational CyclotomicElement::to_rational() const {
  CyclotomicElement z = normalized();
  if (z.coeffs_.empty()) return Rational(0);
  EMF_REQUIRE(z.coeffs_.size() == 1 && z.coeffs_.begin()->first == 0, ValueError,
              "to_rational: element " << to_string() << " is not rational");
  return z.coeffs_.begin()->second;
}

CyclotomicElement CyclotomicElement::inverse() const {
  EMF_REQUIRE(!is_zero(), ValueError, "inverse: zero cyclotomic element");
  const long n = order_;
  // extended Euclid in Q[x]: u*a + v*Phi_n = gcd; gcd is a nonzero constant
  Poly a = poly_rem(to_dense(coeffs_, n), cyclotomic_poly(n));
  Poly b = cyclotomic_poly(n);
  Poly u0 = {Rational(1)}, u1 = {};
  while (!b.empty()) {
    // a = q*b + r with b not necessarily monic: scale
    Rational lead = b.back();
    Poly bm = b;
    for (auto& c : bm) c /= lead;
    Poly q = poly_quot(a, bm);
    for (auto& c : q) c /= lead;
    // r = a - q*b
    Poly r = a;
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) {
        size_t k = i + j;
        if (r.size() <= k) r.resize(k + 1, Rational(0));
        r[k] -= q[i] * b[j];
      }
    }
    poly_trim(r);
    // u2 = u0 - q*u1
    Poly u2 = u0;
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < u1.size(); ++j) {
        size_t k = i + j;
        if (u2.size() <= k) u2.resize(k + 1, Rational(0));
        u2[k] -= q[i] * u1[j];
      }
    }
    poly_trim(u2);
    a = b;
    b = r;
    u0 = u1;
    u1 = u2;
  }
  EMF_REQUIRE(a.size() == 1, CheckError, "inverse: gcd with Phi_n not constant");
  CyclotomicElement z = zero_of_order(n);
  for (size_t i = 0; i < u0.size(); ++i)
    if (u0[i] != 0) z.add_term(static_cast<long>(i), u0[i] / a[0]);
  return z;
}

std::string CyclotomicElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << rational_to_string(c);
    if (k != 0) os << "*e(" << k << "/" << order_ << ")";
  }
  return os.str();
}

CyclotomicElement sqrt_rational_cyclo(const Rational& r) {
  EMF_REQUIRE(r > 0, ValueError, "sqrt_rational_cyclo: argument must be positive");
  // r = p/q -> sqrt(r) = sqrt(p*q)/q; split p*q = s^2 * t with t squarefree
  Integer pq = num(r) * den(r);
  Integer s = 1, t = 1, rest = pq;
  for (Integer p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      s *= p;
      rest /= p * p;
    }
    if (rest % p == 0) {
      t *= p;
      rest /= p;
    }
  }
  t *= rest;
  CyclotomicElement acc(rational(s, den(r)));
  Integer tt = t;
  for (Integer p = 2; p <= tt; ++p) {
    if (tt % p != 0) continue;
    tt /= p;
    if (p == 2) {
      // sqrt(2) = e(1/8) + e(-1/8)
      acc *= CyclotomicElement::root_of_unity(8, 1) + CyclotomicElement::root_of_unity(8, -1);
      continue;
    }
    long pl = to_long(p);
    CyclotomicElement g = CyclotomicElement::zero_of_order(pl);
    for (long a = 1; a < pl; ++a)
      g += Rational(kronecker_symbol(a, pl)) * CyclotomicElement::root_of_unity(pl, a);
    if (pl % 4 == 3) g *= CyclotomicElement::root_of_unity(4, -1);  // g = i*sqrt(p)
    acc *= g;
  }
  return acc.normalized();
}

}  // namespace emf
