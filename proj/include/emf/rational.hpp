#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "emf/error.hpp"

namespace emf {

// Exact integers and rationals. mpq_class keeps lowest terms with positive
// denominator after canonicalization, which is exactly the Rational contract.
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer num(const Rational& r) { return r.get_num(); }
inline Integer den(const Rational& r) { return r.get_den(); }

inline Rational rational(long n, long d = 1) {
  EMF_REQUIRE(d != 0, ValueError, "rational: zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Rational rational(const Integer& n, const Integer& d) {
  EMF_REQUIRE(d != 0, ValueError, "rational: zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return den(r) == 1; }

// floor(p/q) as an Integer, exact for either sign.
inline Integer rational_floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num(r).get_mpz_t(), den(r).get_mpz_t());
  return q;
}

inline Integer rational_ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), num(r).get_mpz_t(), den(r).get_mpz_t());
  return q;
}

// Nearest integer, ties toward +infinity; used when rounding numeric residues.
inline Integer rational_round(const Rational& r) {
  return rational_floor(r + Rational(1, 2));
}

inline long to_long(const Integer& z) {
  EMF_REQUIRE(z.fits_slong_p(), ValueError, "integer too large for machine word: " << z);
  return z.get_si();
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline long gcd_long(long a, long b) { return to_long(gcd(Integer(a), Integer(b))); }
inline long lcm_long(long a, long b) { return to_long(lcm(Integer(a), Integer(b))); }

inline Integer pow_integer(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow_rational(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  EMF_REQUIRE(base != 0 || e > 0, ValueError, "pow_rational: 0 to a negative power");
  Rational r;
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(r.get_num_mpz_t(), num(base).get_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), den(base).get_mpz_t(), a);
  r.canonicalize();
  return e < 0 ? Rational(1) / r : r;
}

// Kronecker symbol (D|a), extended Jacobi symbol in GMP's convention.
inline int kronecker_symbol(const Integer& D, const Integer& a) {
  return mpz_kronecker(D.get_mpz_t(), a.get_mpz_t());
}
inline int kronecker_symbol(long D, long a) {
  return kronecker_symbol(Integer(D), Integer(a));
}

// "p" or "p/q"; the inverse of rational_to_string.
inline Rational parse_rational(const std::string& s) {
  EMF_REQUIRE(!s.empty(), ValueError, "parse_rational: empty string");
  Rational r;
  EMF_REQUIRE(r.set_str(s, 10) == 0, ValueError, "parse_rational: bad literal '" << s << "'");
  EMF_REQUIRE(r.get_den() != 0, ValueError, "parse_rational: zero denominator in '" << s << "'");
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

inline bool is_squarefree(Integer n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    while (n % p == 0) n /= p;
  }
  return true;
}

// Fundamental discriminant: 1 mod 4 squarefree, or 4k with k squarefree, k = 2,3 mod 4.
// Sign-agnostic; callers restrict the sign. D = 1 is excluded.
inline bool is_fundamental_discriminant(const Integer& D) {
  if (D == 1 || D == 0) return false;
  Integer m4 = ((D % 4) + 4) % 4;
  if (m4 == 1) return is_squarefree(D);
  if (m4 == 0) {
    Integer k = D / 4;
    Integer km4 = ((k % 4) + 4) % 4;
    return (km4 == 2 || km4 == 3) && is_squarefree(k);
  }
  return false;
}

}  // namespace emf
