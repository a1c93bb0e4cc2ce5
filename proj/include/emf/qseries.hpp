#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "emf/bigfloat.hpp"
#include "emf/coeff.hpp"

namespace emf {

/** Sparse q-expansion sum_e c_e q^e with rational exponents e = k/M on the
 *  lattice (1/M)Z, M = denom_lattice. Coefficients live in the exact tower
 *  (Rational / CyclotomicElement / QuadraticElement); zeros are never stored.
 *
 *  truncation(): the series is known for all exponents strictly below T.
 *  An empty optional means the stored terms are the whole object (exact
 *  polynomial). Truncation propagates pessimistically:
 *    add: min(Ta, Tb);  mul: min(Ta + val(b), Tb + val(a));
 *    inverse at valuation v: Ta - 2v;  exp/log: unchanged. */
class QSeries {
 public:
  using Terms = std::map<long, Coeff>;

  QSeries() : lattice_(1) {}  // exact zero

  static QSeries zero() { return QSeries(); }
  static QSeries constant(const Coeff& c);
  static QSeries monomial(const Coeff& c, const Rational& e);  // exact c*q^e

  long denom_lattice() const { return lattice_; }
  const std::optional<Rational>& truncation() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool is_zero_series() const { return terms_.empty(); }

  Rational exponent_of(long key) const { return rational(key, lattice_); }

  // smallest stored exponent; ValueError when no terms are stored
  Rational valuation() const;
  Coeff leading_coeff() const;

  // coefficient at exponent e; PrecisionError at or beyond truncation
  Coeff coefficient(const Rational& e) const;

  QSeries with_truncation(const Rational& T) const;  // forget terms at/beyond T
  QSeries rebased(long newLattice) const;            // lattice_ must divide newLattice
  QSeries compacted() const;                         // smallest lattice carrying the support

  QSeries operator-() const;
  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
  QSeries& operator-=(const QSeries& o) { return *this = *this - o; }
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

  QSeries scaled(const Coeff& c) const;
  QSeries shifted(const Rational& e) const;  // multiply by q^e

  std::string to_string(size_t maxTerms = 12) const;

  // building block for constructors; drops exact zeros, folds duplicate keys
  void set_term(const Rational& e, const Coeff& c);
  void set_truncation_raw(std::optional<Rational> T) { trunc_ = std::move(T); }

 private:
  long lattice_;
  Terms terms_;
  std::optional<Rational> trunc_;

  friend QSeries series_mul(const QSeries&, const QSeries&);
};

QSeries series_mul(const QSeries& a, const QSeries& b);

/** Multiplicative inverse. Needs an invertible leading coefficient; on an
 *  exact series that is not a monomial a bounded truncation must be set
 *  first (the inverse has infinite support). */
QSeries series_inverse(const QSeries& a);
QSeries series_div(const QSeries& b, const QSeries& a);

/** Integer powers by binary exponentiation; negative exponents go through
 *  series_inverse. Exponents may be arbitrary-size integers. */
QSeries series_pow(const QSeries& a, const Integer& e);

/** exp of a series with all exponents positive. */
QSeries series_exp(const QSeries& a);
/** log of a series with leading term exactly 1*q^0. */
QSeries series_log(const QSeries& a);

/** prod_i eta(s_i * tau)^{e_i}, expanded by the pentagonal number theorem,
 *  with the q^{s*e/24} prefactors; result truncated exactly at prec. */
QSeries eta_quotient(const std::vector<std::pair<Rational, long>>& spec, const Rational& prec);

/** theta_{m,r} = sum_{s = r mod 2m} q^{s^2/4m}, truncated at prec. */
QSeries theta_nullwert(long m, long r, const Rational& prec);

QSeries eisenstein_e4(const Rational& prec);
QSeries eisenstein_e6(const Rational& prec);

/** Klein j = E4^3 / eta^24 and J = j - 744. */
QSeries klein_j(const Rational& prec);
QSeries capital_J(const Rational& prec);

/** eta(tau)^8 / eta(4*tau)^8 = q^{-1} - 8 + 20q - 62q^3 + ... */
QSeries hauptmodul_t4(const Rational& prec);

/** Substitution q^{1/M} -> zeta^{1/M} q^{s/M} on the exponent lattice:
 *  the term c q^{k/M} becomes c * zeta^k * q^{s k/M}. */
QSeries rescale(const QSeries& a, const Rational& s, const CyclotomicElement& zeta);
inline QSeries rescale(const QSeries& a, const Rational& s) {
  return rescale(a, s, CyclotomicElement(Rational(1)));
}

/** Numeric evaluation sum c_e exp(2 pi i e tau) at digits decimal digits.
 *  The truncation tail is certified with the |c(n)| <= exp(4 pi sqrt(n))
 *  growth envelope; PrecisionError (naming the required order) if the stored
 *  truncation cannot meet 10^{-(digits-10)}. */
BigFloatComplex evaluate(const QSeries& a, const BigFloatComplex& tau, long digits);

/** True when a and b agree on all exponents below the smaller truncation. */
bool series_agree(const QSeries& a, const QSeries& b);
/** CheckError with the first mismatching exponent in the message. */
void require_series_agree(const QSeries& a, const QSeries& b, const std::string& what);

}  // namespace emf
