#pragma once

#include <map>
#include <string>

#include "emf/rational.hpp"

namespace emf {

/** An element of Q(zeta_n), stored as a sparse sum of roots of unity
 *  sum_k c_k * e(k/n) with exponents reduced mod n.
 *
 *  Arithmetic works mod x^n - 1 only (cheap, keeps single roots single-term);
 *  exact zero/equality tests reduce mod the cyclotomic polynomial Phi_n.
 *  normalized() returns the canonical Phi-reduced, order-folded form. */
class CyclotomicElement {
 public:
  CyclotomicElement() : order_(1) {}
  explicit CyclotomicElement(const Rational& r) : order_(1) {
    if (r != 0) coeffs_[0] = r;
  }
  explicit CyclotomicElement(long n) : CyclotomicElement(Rational(n)) {}

  // e(k/n) = exp(2*pi*i*k/n)
  static CyclotomicElement root_of_unity(long n, long k);
  static CyclotomicElement zero_of_order(long n);

  long order() const { return order_; }
  const std::map<long, Rational>& coeffs() const { return coeffs_; }

  CyclotomicElement operator-() const;
  CyclotomicElement& operator+=(const CyclotomicElement& o);
  CyclotomicElement& operator-=(const CyclotomicElement& o);
  CyclotomicElement& operator*=(const CyclotomicElement& o);
  friend CyclotomicElement operator+(CyclotomicElement a, const CyclotomicElement& b) {
    a += b;
    return a;
  }
  friend CyclotomicElement operator-(CyclotomicElement a, const CyclotomicElement& b) {
    a -= b;
    return a;
  }
  friend CyclotomicElement operator*(CyclotomicElement a, const CyclotomicElement& b) {
    a *= b;
    return a;
  }

  CyclotomicElement& operator*=(const Rational& r);
  friend CyclotomicElement operator*(CyclotomicElement a, const Rational& r) {
    a *= r;
    return a;
  }
  friend CyclotomicElement operator*(const Rational& r, CyclotomicElement a) {
    a *= r;
    return a;
  }

  // complex conjugation e(k/n) -> e(-k/n)
  CyclotomicElement conj() const;
  CyclotomicElement pow(long e) const;
  // multiplicative inverse in Q(zeta_n); ValueError on zero
  CyclotomicElement inverse() const;

  bool is_zero() const;
  friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) {
    return (a - b).is_zero();
  }
  friend bool operator!=(const CyclotomicElement& a, const CyclotomicElement& b) {
    return !(a == b);
  }

  bool is_rational() const;
  // ValueError when the element is irrational
  Rational to_rational() const;

  // canonical form: reduced mod Phi, exponent lattice folded to the smallest order
  CyclotomicElement normalized() const;

  // promote to an order that order() divides
  CyclotomicElement promoted(long newOrder) const;

  std::string to_string() const;

 private:
  long order_;
  std::map<long, Rational> coeffs_;  // exponent in [0, order) -> nonzero coefficient

  void add_term(long k, const Rational& c);
  friend CyclotomicElement sqrt_rational_cyclo(const Rational& r);
};

/** Exact sqrt of a positive rational as a cyclotomic element, via quadratic
 *  Gauss sums per prime: sqrt(2) = e(1/8) + e(-1/8); for odd p the Gauss sum
 *  sum_a (a|p) e(a/p) equals sqrt(p) for p = 1 mod 4 and i*sqrt(p) otherwise. */
CyclotomicElement sqrt_rational_cyclo(const Rational& r);

}  // namespace emf
