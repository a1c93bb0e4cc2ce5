#pragma once

#include <string>
#include <variant>

#include "emf/cyclotomic.hpp"
#include "emf/quadratic.hpp"
#include "emf/rational.hpp"

namespace emf {

/** Coefficient domain tower: Rational embeds in any cyclotomic or quadratic
 *  field; cyclotomic and quadratic elements never mix implicitly (the one
 *  legitimate crossover is the explicit Gauss-sum embedding
 *  QuadraticElement::to_cyclotomic). */
using Coeff = std::variant<Rational, CyclotomicElement, QuadraticElement>;

inline bool coeff_is_zero(const Coeff& c) {
  return std::visit([](const auto& v) {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>)
      return v == 0;
    else
      return v.is_zero();
  }, c);
}

// canonical storage form: cyclotomic/quadratic values that are rational demote
inline Coeff coeff_normalize(const Coeff& c) {
  if (std::holds_alternative<CyclotomicElement>(c)) {
    CyclotomicElement z = std::get<CyclotomicElement>(c).normalized();
    if (z.is_rational()) return z.to_rational();
    return z;
  }
  if (std::holds_alternative<QuadraticElement>(c)) {
    const auto& q = std::get<QuadraticElement>(c);
    if (q.is_rational()) return q.to_rational();
    return q;
  }
  return c;
}

namespace detail {

template <class BinOpR, class BinOpC, class BinOpQ>
Coeff coeff_binary(const Coeff& a, const Coeff& b, BinOpR fr, BinOpC fc, BinOpQ fq,
                   const char* what) {
  if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
    return fr(std::get<Rational>(a), std::get<Rational>(b));
  if (std::holds_alternative<QuadraticElement>(a) || std::holds_alternative<QuadraticElement>(b)) {
    EMF_REQUIRE(!std::holds_alternative<CyclotomicElement>(a) &&
                    !std::holds_alternative<CyclotomicElement>(b),
                DomainError, what << ": cyclotomic and quadratic coefficients cannot mix");
    long D1 = std::holds_alternative<QuadraticElement>(a)
                  ? std::get<QuadraticElement>(a).discriminant()
                  : std::get<QuadraticElement>(b).discriminant();
    auto lift = [D1](const Coeff& x) {
      if (std::holds_alternative<Rational>(x))
        return QuadraticElement(D1, std::get<Rational>(x), Rational(0));
      return std::get<QuadraticElement>(x);
    };
    return coeff_normalize(fq(lift(a), lift(b)));
  }
  auto lift = [](const Coeff& x) {
    if (std::holds_alternative<Rational>(x)) return CyclotomicElement(std::get<Rational>(x));
    return std::get<CyclotomicElement>(x);
  };
  return coeff_normalize(fc(lift(a), lift(b)));
}

}  // namespace detail

inline Coeff coeff_add(const Coeff& a, const Coeff& b) {
  return detail::coeff_binary(
      a, b, [](const Rational& x, const Rational& y) { return x + y; },
      [](const CyclotomicElement& x, const CyclotomicElement& y) { return x + y; },
      [](const QuadraticElement& x, const QuadraticElement& y) { return x + y; }, "coeff_add");
}

inline Coeff coeff_mul(const Coeff& a, const Coeff& b) {
  return detail::coeff_binary(
      a, b, [](const Rational& x, const Rational& y) { return x * y; },
      [](const CyclotomicElement& x, const CyclotomicElement& y) { return x * y; },
      [](const QuadraticElement& x, const QuadraticElement& y) { return x * y; }, "coeff_mul");
}

inline Coeff coeff_neg(const Coeff& c) {
  return std::visit([](const auto& v) -> Coeff { return -v; }, c);
}

inline Coeff coeff_sub(const Coeff& a, const Coeff& b) { return coeff_add(a, coeff_neg(b)); }

inline bool coeff_eq(const Coeff& a, const Coeff& b) { return coeff_is_zero(coeff_sub(a, b)); }

inline Coeff coeff_inverse(const Coeff& c) {
  EMF_REQUIRE(!coeff_is_zero(c), ValueError, "coeff_inverse: zero coefficient");
  if (std::holds_alternative<Rational>(c)) return Rational(1) / std::get<Rational>(c);
  if (std::holds_alternative<CyclotomicElement>(c))
    return coeff_normalize(std::get<CyclotomicElement>(c).inverse());
  return coeff_normalize(std::get<QuadraticElement>(c).inverse());
}

// complex conjugation; real on rationals and real-quadratic elements
inline Coeff coeff_conj(const Coeff& c) {
  if (std::holds_alternative<CyclotomicElement>(c))
    return coeff_normalize(std::get<CyclotomicElement>(c).conj());
  return c;
}

inline Coeff coeff_scale(const Coeff& c, const Rational& r) { return coeff_mul(c, Coeff(r)); }

inline bool coeff_is_rational(const Coeff& c) {
  if (std::holds_alternative<Rational>(c)) return true;
  if (std::holds_alternative<CyclotomicElement>(c))
    return std::get<CyclotomicElement>(c).is_rational();
  return std::get<QuadraticElement>(c).is_rational();
}

inline Rational coeff_to_rational(const Coeff& c) {
  if (std::holds_alternative<Rational>(c)) return std::get<Rational>(c);
  if (std::holds_alternative<CyclotomicElement>(c))
    return std::get<CyclotomicElement>(c).to_rational();
  return std::get<QuadraticElement>(c).to_rational();
}

inline std::string coeff_to_string(const Coeff& c) {
  return std::visit([](const auto& v) -> std::string {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>)
      return rational_to_string(v);
    else
      return v.to_string();
  }, c);
}

}  // namespace emf
