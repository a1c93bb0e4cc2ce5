#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "emf/bigfloat.hpp"
#include "emf/coeff.hpp"
#include "emf/cyclotomic.hpp"
#include "emf/quadratic.hpp"
#include "emf/rational.hpp"

using namespace emf;

namespace {

// double-precision value of a cyclotomic element, enough for sign checks
std::pair<double, double> approx(const CyclotomicElement& z) {
  double re = 0, im = 0;
  for (auto& [k, c] : z.coeffs()) {
    double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(z.order());
    re += c.get_d() * std::cos(ang);
    im += c.get_d() * std::sin(ang);
  }
  return {re, im};
}

CyclotomicElement root(long n, long k) { return CyclotomicElement::root_of_unity(n, k); }

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(rational(6, 4) == rational(3, 2));
  CHECK(rational(1, -2) == rational(-1, 2));
  CHECK(den(rational(1, -2)) == 2);

  CHECK(rational_floor(rational(-3, 2)) == -2);
  CHECK(rational_ceil(rational(-3, 2)) == -1);
  CHECK(rational_floor(rational(7, 2)) == 3);
  CHECK(rational_ceil(rational(7, 2)) == 4);
  CHECK(rational_round(rational(5, 2)) == 3);   // ties toward +infinity
  CHECK(rational_round(rational(-5, 2)) == -2);
  CHECK(rational_round(rational(7, 3)) == 2);
  CHECK(rational_round(rational(-7, 3)) == -2);

  CHECK(is_integer(rational(8, 4)));
  CHECK(!is_integer(rational(8, 3)));

  CHECK(parse_rational("22/7") == rational(22, 7));
  CHECK(parse_rational("-5") == Rational(-5));
  CHECK(rational_to_string(rational(-10, 4)) == "-5/2");
  CHECK(parse_rational(rational_to_string(rational(355, -113))) == rational(-355, 113));
  CHECK_THROWS_AS(parse_rational("x"), ValueError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValueError);
  CHECK_THROWS_AS(parse_rational(""), ValueError);

  CHECK(pow_rational(rational(2, 3), -2) == rational(9, 4));
  CHECK(pow_rational(Rational(5), 0) == 1);
  CHECK(pow_integer(Integer(3), 5) == 243);

  CHECK(gcd_long(12, 18) == 6);
  CHECK(lcm_long(4, 6) == 12);
  CHECK(to_long(Integer(-7)) == -7);
  CHECK_THROWS_AS(to_long(pow_integer(Integer(2), 80)), ValueError);
}

TEST_CASE("kronecker symbol agrees with quadratic residues") {
  for (long p : {3L, 5L, 7L, 11L, 13L, 17L}) {
    for (long a = 1; a < p; ++a) {
      bool residue = false;
      for (long x = 1; x < p; ++x)
        if ((x * x) % p == a) residue = true;
      CHECK(kronecker_symbol(a, p) == (residue ? 1 : -1));
    }
    CHECK(kronecker_symbol(p, p) == 0);
  }
  // multiplicativity and periodicity in the discriminant conventions we rely on
  for (long D : {5L, 8L, 12L, 13L, -3L, -4L, -7L, -8L}) {
    for (long a = 1; a <= 30; ++a) {
      CHECK(kronecker_symbol(D, a + std::abs(D)) == kronecker_symbol(D, a));
      for (long b = 1; b <= 10; ++b)
        CHECK(kronecker_symbol(D, a * b) == kronecker_symbol(D, a) * kronecker_symbol(D, b));
    }
  }
  CHECK(kronecker_symbol(5, 2) == -1);
  CHECK(kronecker_symbol(8, 3) == -1);
  CHECK(kronecker_symbol(-4, 3) == -1);
  CHECK(kronecker_symbol(-4, 5) == 1);
}

TEST_CASE("squarefree and fundamental discriminants") {
  CHECK(is_squarefree(Integer(1)));
  CHECK(is_squarefree(Integer(30)));
  CHECK(is_squarefree(Integer(-30)));
  CHECK(!is_squarefree(Integer(0)));
  CHECK(!is_squarefree(Integer(12)));
  CHECK(!is_squarefree(Integer(49)));

  for (long D : {5L, 8L, 12L, 13L, 17L, 21L, 24L, -3L, -4L, -7L, -8L, -11L, -15L, -20L})
    CHECK(is_fundamental_discriminant(Integer(D)));
  for (long D : {0L, 1L, -1L, 2L, 3L, 4L, -2L, 9L, -9L, -12L, 16L, 25L, 45L, -18L})
    CHECK(!is_fundamental_discriminant(Integer(D)));
}

TEST_CASE("cyclotomic arithmetic and canonical forms") {
  CHECK((CyclotomicElement(Rational(1)) + root(3, 1) + root(3, 2)).is_zero());
  CHECK(root(8, 1).pow(4) == CyclotomicElement(Rational(-1)));
  CHECK(root(8, 1).pow(8) == CyclotomicElement(Rational(1)));

  // order folding: e(2/8) lives in Q(zeta_4)
  CyclotomicElement z = root(8, 2).normalized();
  CHECK(z.order() == 4);
  CHECK(z == root(4, 1));

  // cross-order promotion and equality
  CHECK(root(3, 1) * root(4, 1) == root(12, 7));
  CHECK(root(6, 1) == -root(3, 2));

  CyclotomicElement w = CyclotomicElement(Rational(2)) + Rational(3) * root(5, 1) -
                        rational(1, 7) * root(5, 3);
  CHECK(w * w.inverse() == CyclotomicElement(Rational(1)));
  CHECK(root(12, 5).inverse() == root(12, -5));
  CHECK(root(12, 5).conj() == root(12, 7));
  CHECK(w.pow(0) == CyclotomicElement(Rational(1)));
  CHECK(w.pow(-2) == w.inverse().pow(2));
  CHECK(w.pow(3) == w * w * w);

  CHECK_THROWS_AS(CyclotomicElement::zero_of_order(5).inverse(), ValueError);

  CyclotomicElement r2 = (CyclotomicElement(Rational(1)) + root(4, 1)) *
                         (CyclotomicElement(Rational(1)) - root(4, 1));
  CHECK(r2.is_rational());
  CHECK(r2.to_rational() == 2);
  CyclotomicElement s5 = root(5, 1) + root(5, 2) + root(5, 3) + root(5, 4);
  CHECK(s5.is_rational());
  CHECK(s5.to_rational() == -1);
  CHECK(!root(5, 1).is_rational());
  CHECK_THROWS_AS(root(5, 1).to_rational(), ValueError);

  CHECK(w.normalized() == w);
  CHECK(w.normalized().normalized().order() == w.normalized().order());
  CHECK(root(9, 3).normalized().order() == 3);
}

TEST_CASE("rational square roots as cyclotomic elements") {
  for (auto r : {rational(2), rational(3), rational(5), rational(6), rational(7), rational(1, 2),
                 rational(4, 9), rational(9, 4), rational(12), rational(30), rational(45, 7)}) {
    CyclotomicElement s = sqrt_rational_cyclo(r);
    CHECK(s * s == CyclotomicElement(r));
  }
  CHECK(sqrt_rational_cyclo(Rational(4)).to_rational() == 2);
  CHECK(sqrt_rational_cyclo(rational(9, 16)).to_rational() == rational(3, 4));

  // principal branch: the embedded value is the positive square root
  for (auto r : {rational(2), rational(3), rational(5), rational(30), rational(1, 2)}) {
    auto [re, im] = approx(sqrt_rational_cyclo(r));
    CHECK(re == doctest::Approx(std::sqrt(r.get_d())).epsilon(1e-9));
    CHECK(std::abs(im) < 1e-9);
  }
  CHECK_THROWS_AS(sqrt_rational_cyclo(Rational(-2)), ValueError);
  CHECK_THROWS_AS(sqrt_rational_cyclo(Rational(0)), ValueError);
}

TEST_CASE("quadratic field elements") {
  QuadraticElement x(5, Rational(1), Rational(1));
  CHECK(x * x.conj() == QuadraticElement(5, Rational(-4), Rational(0)));
  CHECK(x * x.inverse() == QuadraticElement(5, Rational(1), Rational(0)));
  CHECK((x - x).is_zero());
  CHECK(QuadraticElement(5, Rational(3), Rational(0)).to_rational() == 3);
  CHECK_THROWS_AS(x.to_rational(), ValueError);

  CHECK_THROWS_AS(QuadraticElement(6, Rational(0), Rational(1)), ValueError);
  CHECK_THROWS_AS(QuadraticElement(9, Rational(0), Rational(1)), ValueError);
  CHECK_THROWS_AS(QuadraticElement(-3, Rational(0), Rational(1)), ValueError);
  CHECK_THROWS_AS(QuadraticElement(1, Rational(0), Rational(1)), ValueError);

  QuadraticElement y(8, Rational(0), Rational(1));
  CHECK_THROWS_AS(x += y, DomainError);

  // Gauss sum embedding hits the positive root, and squares back exactly
  for (long D1 : {5L, 8L, 12L, 13L, 17L, 24L}) {
    CyclotomicElement rt = QuadraticElement(D1, Rational(0), Rational(1)).to_cyclotomic();
    CHECK(rt * rt == CyclotomicElement(Rational(D1)));
    auto [re, im] = approx(rt);
    CHECK(re == doctest::Approx(std::sqrt(static_cast<double>(D1))).epsilon(1e-9));
    CHECK(std::abs(im) < 1e-9);
  }
  CyclotomicElement emb = QuadraticElement(5, rational(1, 2), rational(-3, 2)).to_cyclotomic();
  CyclotomicElement expect = CyclotomicElement(rational(1, 2)) -
                             rational(3, 2) * QuadraticElement(5, Rational(0), Rational(1)).to_cyclotomic();
  CHECK(emb == expect);
}

TEST_CASE("coefficient variants promote or refuse") {
  Coeff r = Rational(2);
  Coeff z = root(3, 1);
  Coeff q = QuadraticElement(5, Rational(1), Rational(1));

  CHECK(coeff_is_rational(coeff_add(r, r)));
  CHECK(coeff_to_rational(coeff_mul(r, r)) == 4);

  Coeff rz = coeff_add(r, z);  // 2 + zeta_3
  CHECK(std::holds_alternative<CyclotomicElement>(rz));
  CHECK(coeff_eq(coeff_sub(rz, z), r));

  Coeff rq = coeff_mul(r, q);
  CHECK(std::holds_alternative<QuadraticElement>(rq));
  CHECK(coeff_eq(rq, Coeff(QuadraticElement(5, Rational(2), Rational(2)))));

  CHECK_THROWS_AS(coeff_add(z, q), DomainError);
  CHECK_THROWS_AS(coeff_mul(q, z), DomainError);

  // cyclotomic that is secretly rational demotes on normalize
  Coeff two = coeff_add(Coeff(root(3, 1)), Coeff(CyclotomicElement(Rational(2)) - root(3, 1)));
  CHECK(coeff_is_rational(two));
  CHECK(coeff_to_rational(two) == 2);

  CHECK(coeff_eq(coeff_mul(q, coeff_inverse(q)), Coeff(Rational(1))));
  CHECK(coeff_eq(coeff_mul(z, coeff_inverse(z)), Coeff(Rational(1))));
  CHECK(coeff_eq(coeff_conj(z), Coeff(root(3, 2))));
  CHECK(coeff_eq(coeff_conj(r), r));
  CHECK(coeff_is_zero(coeff_sub(q, q)));
  CHECK(coeff_eq(coeff_scale(z, Rational(0)), Coeff(Rational(0))));
}

TEST_CASE("big floats") {
  BigFloat p = BigFloat::pi(256);
  CHECK(p.to_string(30).substr(0, 12) == "3.1415926535");
  CHECK(p.to_double() == doctest::Approx(M_PI));

  CHECK(BigFloat::from_long(2, 256).sqrt().to_double() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(BigFloat::from_rational(rational(1, 3), 256).to_string(20).substr(0, 8) == "0.333333");
  CHECK(BigFloat::from_double(1.0, 128).exp().to_double() == doctest::Approx(std::exp(1.0)));

  CHECK(BigFloat::from_double(2.6, 64).round() == 3);
  CHECK(BigFloat::from_double(-2.6, 64).round() == -3);
  CHECK(BigFloat::from_double(0.4, 64).round() == 0);

  CHECK(BigFloat::from_long(-5, 64).abs().to_double() == doctest::Approx(5.0));
  CHECK(BigFloat::from_long(-5, 64).is_negative());
  CHECK(BigFloat(64).is_zero());

  long d = 30;
  BigFloatComplex a = BigFloatComplex::make(Rational(1), Rational(2), d);
  BigFloatComplex b = BigFloatComplex::make(Rational(3), Rational(4), d);
  BigFloatComplex ab = a * b;
  CHECK(ab.re.to_double() == doctest::Approx(-5.0));
  CHECK(ab.im.to_double() == doctest::Approx(10.0));
  BigFloatComplex back = ab / b;
  CHECK((back - a).abs().to_double() == doctest::Approx(0.0).epsilon(1e-20));

  // e(i) = exp(-2 pi), e(1/4) = i
  BigFloatComplex ei = exp_2pi_i(BigFloatComplex::make(Rational(0), Rational(1), d));
  CHECK(ei.re.to_double() == doctest::Approx(std::exp(-2.0 * M_PI)).epsilon(1e-12));
  CHECK(std::abs(ei.im.to_double()) < 1e-25);
  BigFloatComplex eq = exp_2pi_i(BigFloatComplex::make(rational(1, 4), Rational(0), d));
  CHECK(std::abs(eq.re.to_double()) < 1e-25);
  CHECK(eq.im.to_double() == doctest::Approx(1.0));

  CHECK(BigFloatComplex::bits_for(20) >= 64);
  CHECK(BigFloatComplex::bits_for(100) >= 332);
}
