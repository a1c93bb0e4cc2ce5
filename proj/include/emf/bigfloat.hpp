#pragma once

#include <mpfr.h>

#include <string>

#include "emf/rational.hpp"

namespace emf {

/** Arbitrary-precision real number on MPFR, round-to-nearest throughout.
 *  Precision is carried per value in bits; binary operations compute at the
 *  larger operand precision. */
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 64) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_rational(const Rational& r, mpfr_prec_t bits) {
    BigFloat x(bits);
    mpfr_set_q(x.v_, r.get_mpq_t(), MPFR_RNDN);
    return x;
  }
  static BigFloat from_long(long n, mpfr_prec_t bits) {
    BigFloat x(bits);
    mpfr_set_si(x.v_, n, MPFR_RNDN);
    return x;
  }
  static BigFloat from_double(double d, mpfr_prec_t bits) {
    BigFloat x(bits);
    mpfr_set_d(x.v_, d, MPFR_RNDN);
    return x;
  }
  static BigFloat pi(mpfr_prec_t bits) {
    BigFloat x(bits);
    mpfr_const_pi(x.v_, MPFR_RNDN);
    return x;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_negative() const { return mpfr_sgn(v_) < 0; }
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }

  BigFloat abs() const {
    BigFloat r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat sqrt() const {
    BigFloat r(precision());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat exp() const {
    BigFloat r(precision());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat cos() const {
    BigFloat r(precision());
    mpfr_cos(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat sin() const {
    BigFloat r(precision());
    mpfr_sin(r.v_, v_, MPFR_RNDN);
    return r;
  }

  // nearest integer; exact when within precision
  Integer round() const {
    BigFloat r(precision());
    mpfr_round(r.v_, v_);
    Integer z;
    mpfr_get_z(z.get_mpz_t(), r.v_, MPFR_RNDN);
    return z;
  }

  // decimal rendering with the given significant digits
  std::string to_string(size_t digits10 = 20) const;

 private:
  mpfr_t v_;
};

/** Complex number over BigFloat with a nominal decimal precision tag. */
struct BigFloatComplex {
  BigFloat re, im;
  long digits = 20;

  static mpfr_prec_t bits_for(long digits10) {
    return static_cast<mpfr_prec_t>(static_cast<double>(digits10) * 3.3220) + 32;
  }
  static BigFloatComplex make(const Rational& re, const Rational& im, long digits10) {
    mpfr_prec_t b = bits_for(digits10);
    return {BigFloat::from_rational(re, b), BigFloat::from_rational(im, b), digits10};
  }
  static BigFloatComplex zero(long digits10) { return make(Rational(0), Rational(0), digits10); }

  friend BigFloatComplex operator+(const BigFloatComplex& a, const BigFloatComplex& b) {
    return {a.re + b.re, a.im + b.im, std::max(a.digits, b.digits)};
  }
  friend BigFloatComplex operator-(const BigFloatComplex& a, const BigFloatComplex& b) {
    return {a.re - b.re, a.im - b.im, std::max(a.digits, b.digits)};
  }
  friend BigFloatComplex operator*(const BigFloatComplex& a, const BigFloatComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re, std::max(a.digits, b.digits)};
  }
  friend BigFloatComplex operator/(const BigFloatComplex& a, const BigFloatComplex& b) {
    BigFloat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n,
            std::max(a.digits, b.digits)};
  }
  BigFloatComplex operator-() const { return {-re, -im, digits}; }

  BigFloat abs() const { return (re * re + im * im).sqrt(); }

  std::string to_string() const {
    return re.to_string(static_cast<size_t>(digits)) + " + " +
           im.to_string(static_cast<size_t>(digits)) + "i";
  }
};

/** exp(2*pi*i*z) for complex z = x + iy: magnitude exp(-2*pi*y), phase 2*pi*x. */
BigFloatComplex exp_2pi_i(const BigFloatComplex& z);

}  // namespace emf
