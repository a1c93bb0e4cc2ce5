#pragma once

#include <string>

#include "emf/cyclotomic.hpp"
#include "emf/rational.hpp"

namespace emf {

/** An element a + b*sqrt(D1) of the real quadratic field Q(sqrt(D1)),
 *  D1 a positive fundamental discriminant. */
class QuadraticElement {
 public:
  QuadraticElement(long D1, Rational a, Rational b) : D1_(D1), a_(std::move(a)), b_(std::move(b)) {
    EMF_REQUIRE(D1 > 0 && is_fundamental_discriminant(Integer(D1)), ValueError,
                "QuadraticElement: " << D1 << " is not a positive fundamental discriminant");
  }
  explicit QuadraticElement(long D1) : QuadraticElement(D1, Rational(0), Rational(0)) {}

  long discriminant() const { return D1_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  Rational to_rational() const {
    EMF_REQUIRE(b_ == 0, ValueError, "to_rational: element " << to_string() << " is irrational");
    return a_;
  }

  QuadraticElement operator-() const { return {D1_, -a_, -b_}; }
  QuadraticElement conj() const { return {D1_, a_, -b_}; }  // Galois: sqrt(D1) -> -sqrt(D1)

  QuadraticElement& operator+=(const QuadraticElement& o) {
    check_same(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QuadraticElement& operator-=(const QuadraticElement& o) {
    check_same(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QuadraticElement& operator*=(const QuadraticElement& o) {
    check_same(o);
    Rational na = a_ * o.a_ + Rational(D1_) * b_ * o.b_;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = na;
    b_ = nb;
    return *this;
  }
  friend QuadraticElement operator+(QuadraticElement x, const QuadraticElement& y) { return x += y; }
  friend QuadraticElement operator-(QuadraticElement x, const QuadraticElement& y) { return x -= y; }
  friend QuadraticElement operator*(QuadraticElement x, const QuadraticElement& y) { return x *= y; }

  QuadraticElement inverse() const {
    Rational n = a_ * a_ - Rational(D1_) * b_ * b_;
    EMF_REQUIRE(n != 0, ValueError, "inverse: zero or non-invertible quadratic element");
    return {D1_, a_ / n, -b_ / n};
  }

  friend bool operator==(const QuadraticElement& x, const QuadraticElement& y) {
    return x.D1_ == y.D1_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  /** Embed via the Gauss sum sqrt(D1) = sum_{a mod D1} (D1|a) e(a/D1); exact. */
  CyclotomicElement to_cyclotomic() const {
    CyclotomicElement root = CyclotomicElement::zero_of_order(D1_);
    for (long x = 1; x < D1_; ++x)
      root += Rational(kronecker_symbol(D1_, x)) * CyclotomicElement::root_of_unity(D1_, x);
    return (CyclotomicElement(a_) + CyclotomicElement(b_) * root).normalized();
  }

  std::string to_string() const {
    return rational_to_string(a_) + " + " + rational_to_string(b_) + "*sqrt(" +
           std::to_string(D1_) + ")";
  }

 private:
  long D1_;
  Rational a_, b_;

  void check_same(const QuadraticElement& o) const {
    EMF_REQUIRE(D1_ == o.D1_, DomainError,
                "quadratic elements with different discriminants " << D1_ << " vs " << o.D1_);
  }
};

}  // namespace emf
