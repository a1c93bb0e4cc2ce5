#include "emf/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace emf {

namespace {

// keys on lattice M are valid iff k < T*M, i.e. k < ceil(T*M) in all cases
long key_bound(const Rational& T, long M) { return to_long(rational_ceil(T * Rational(M))); }

std::optional<Rational> min_trunc(const std::optional<Rational>& a,
                                  const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

QSeries QSeries::constant(const Coeff& c) { return monomial(c, Rational(0)); }

QSeries QSeries::monomial(const Coeff& c, const Rational& e) {
  QSeries s;
  s.set_term(e, c);
  return s;
}

void QSeries::set_term(const Rational& e, const Coeff& c) {
  long d = to_long(den(e));
  if (lattice_ % d != 0) *this = rebased(lcm_long(lattice_, d));
  long k = to_long(num(e) * (lattice_ / d));
  Coeff v = coeff_normalize(c);
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (!coeff_is_zero(v)) terms_[k] = v;
  } else {
    Coeff s = coeff_add(it->second, v);
    if (coeff_is_zero(s))
      terms_.erase(it);
    else
      it->second = s;
  }
}

QSeries QSeries::rebased(long newLattice) const {
  EMF_REQUIRE(newLattice >= 1 && newLattice % lattice_ == 0, ValueError,
              "rebased: " << lattice_ << " does not divide " << newLattice);
  if (newLattice == lattice_) return *this;
  QSeries s;
  s.lattice_ = newLattice;
  s.trunc_ = trunc_;
  long f = newLattice / lattice_;
  for (auto& [k, c] : terms_) s.terms_[k * f] = c;
  return s;
}

QSeries QSeries::compacted() const {
  long g = lattice_;
  for (auto& [k, c] : terms_) {
    g = gcd_long(g, k);
    if (g == 1) return *this;
  }
  if (g == 1) return *this;
  QSeries s;
  s.lattice_ = lattice_ / g;
  s.trunc_ = trunc_;
  for (auto& [k, c] : terms_) s.terms_[k / g] = c;
  return s;
}

Rational QSeries::valuation() const {
  EMF_REQUIRE(!terms_.empty(), ValueError, "valuation: series has no stored terms");
  return exponent_of(terms_.begin()->first);
}

Coeff QSeries::leading_coeff() const {
  EMF_REQUIRE(!terms_.empty(), ValueError, "leading_coeff: series has no stored terms");
  return terms_.begin()->second;
}

Coeff QSeries::coefficient(const Rational& e) const {
  if (trunc_ && e >= *trunc_)
    throw PrecisionError("coefficient at q^" + rational_to_string(e) +
                         " is beyond the truncation order " + rational_to_string(*trunc_));
  Rational ke = e * Rational(lattice_);
  if (!is_integer(ke)) return Rational(0);
  auto it = terms_.find(to_long(num(ke)));
  return it == terms_.end() ? Coeff(Rational(0)) : it->second;
}

QSeries QSeries::with_truncation(const Rational& T) const {
  QSeries s = *this;
  s.trunc_ = min_trunc(trunc_, T);
  long b = key_bound(*s.trunc_, s.lattice_);
  s.terms_.erase(s.terms_.lower_bound(b), s.terms_.end());
  return s;
}

QSeries QSeries::operator-() const {
  QSeries s = *this;
  for (auto& [k, c] : s.terms_) c = coeff_neg(c);
  return s;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  long L = lcm_long(a.lattice_, b.lattice_);
  QSeries ra = a.rebased(L), rb = b.rebased(L);
  QSeries s;
  s.lattice_ = L;
  s.trunc_ = min_trunc(ra.trunc_, rb.trunc_);
  long bound = s.trunc_ ? key_bound(*s.trunc_, L) : 0;
  auto keep = [&](long k) { return !s.trunc_ || k < bound; };
  for (auto& [k, c] : ra.terms_)
    if (keep(k)) s.terms_[k] = c;
  for (auto& [k, c] : rb.terms_) {
    if (!keep(k)) continue;
    auto it = s.terms_.find(k);
    if (it == s.terms_.end()) {
      s.terms_[k] = c;
    } else {
      Coeff v = coeff_add(it->second, c);
      if (coeff_is_zero(v))
        s.terms_.erase(it);
      else
        it->second = v;
    }
  }
  return s;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries series_mul(const QSeries& a, const QSeries& b) {
  long L = lcm_long(a.lattice_, b.lattice_);
  QSeries ra = a.rebased(L), rb = b.rebased(L);
  QSeries s;
  s.lattice_ = L;
  // pessimistic truncation; an empty factor contributes its truncation as
  // valuation (nothing is stored below it, nothing is known above it)
  auto val_or_T = [](const QSeries& x) -> std::optional<Rational> {
    if (!x.terms().empty()) return x.valuation();
    return x.truncation();
  };
  std::optional<Rational> t;
  if (ra.trunc_) {
    auto vb = val_or_T(rb);
    if (vb) t = min_trunc(t, *ra.trunc_ + *vb);
  }
  if (rb.trunc_) {
    auto va = val_or_T(ra);
    if (va) t = min_trunc(t, *rb.trunc_ + *va);
  }
  s.trunc_ = t;
  long bound = t ? key_bound(*t, L) : 0;
  for (auto& [ka, ca] : ra.terms_)
    for (auto& [kb, cb] : rb.terms_) {
      long k = ka + kb;
      if (t && k >= bound) continue;
      Coeff p = coeff_mul(ca, cb);
      if (coeff_is_zero(p)) continue;
      auto it = s.terms_.find(k);
      if (it == s.terms_.end()) {
        s.terms_[k] = p;
      } else {
        Coeff v = coeff_add(it->second, p);
        if (coeff_is_zero(v))
          s.terms_.erase(it);
        else
          it->second = v;
      }
    }
  return s;
}

QSeries operator*(const QSeries& a, const QSeries& b) { return series_mul(a, b); }

QSeries QSeries::scaled(const Coeff& c) const {
  if (coeff_is_zero(c)) return QSeries();  // exact zero
  QSeries s;
  s.lattice_ = lattice_;
  s.trunc_ = trunc_;
  for (auto& [k, v] : terms_) {
    Coeff p = coeff_mul(v, c);
    if (!coeff_is_zero(p)) s.terms_[k] = p;
  }
  return s;
}

QSeries QSeries::shifted(const Rational& e) const {
  QSeries s = *this;
  long d = to_long(den(e));
  if (s.lattice_ % d != 0) s = s.rebased(lcm_long(s.lattice_, d));
  long dk = to_long(num(e) * (s.lattice_ / d));
  QSeries out;
  out.lattice_ = s.lattice_;
  if (s.trunc_) out.trunc_ = *s.trunc_ + e;
  for (auto& [k, c] : s.terms_) out.terms_[k + dk] = c;
  return out;
}

QSeries series_inverse(const QSeries& a) {
  EMF_REQUIRE(!a.is_zero_series(), ValueError, "series_inverse: zero series");
  Rational v = a.valuation();
  Coeff cinv = coeff_inverse(a.leading_coeff());
  if (a.terms().size() == 1 && !a.truncation())
    return QSeries::monomial(cinv, -v);  // exact monomial
  EMF_REQUIRE(a.truncation(), ValueError,
              "series_inverse: exact non-monomial series has an infinite-support inverse; "
              "set a truncation first");
  // normalize to leading term 1*q^0, invert by recurrence, undo;
  // the final shift by -v makes the result certified below T(a) - 2v
  QSeries b = a.shifted(-v).scaled(cinv);  // leading 1 at exponent 0
  Rational X = *b.truncation();            // certified order of b and of 1/b
  long M = b.denom_lattice();
  if (X <= 0) {
    QSeries none;
    none = none.rebased(M);
    none.set_truncation_raw(X);
    return none.shifted(-v);
  }
  long bound = key_bound(X, M);
  std::map<long, Coeff> f;
  f[0] = Rational(1);
  for (long k = 1; k < bound; ++k) {
    Coeff s = Rational(0);
    for (auto& [j, bj] : b.terms()) {
      if (j <= 0) continue;
      if (j > k) break;
      auto it = f.find(k - j);
      if (it == f.end()) continue;
      s = coeff_add(s, coeff_mul(bj, it->second));
    }
    s = coeff_neg(s);
    if (!coeff_is_zero(s)) f[k] = s;
  }
  QSeries inv;
  for (auto& [k, c] : f) inv.set_term(rational(k, M), c);
  inv = inv.rebased(lcm_long(inv.denom_lattice(), M));
  inv.set_truncation_raw(X);
  return inv.shifted(-v).scaled(cinv);
}

QSeries series_div(const QSeries& b, const QSeries& a) { return series_mul(b, series_inverse(a)); }

QSeries series_pow(const QSeries& a, const Integer& e) {
  if (e == 0) return QSeries::constant(Rational(1));
  if (e < 0) return series_pow(series_inverse(a), -e);
  QSeries base = a;
  QSeries r = QSeries::constant(Rational(1));
  size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = 0; i < nbits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) r = series_mul(r, base);
    if (i + 1 < nbits) base = series_mul(base, base);
  }
  return r;
}

QSeries series_exp(const QSeries& a) {
  if (a.is_zero_series() && !a.truncation()) return QSeries::constant(Rational(1));
  if (!a.is_zero_series())
    EMF_REQUIRE(a.valuation() > 0, ValueError,
                "series_exp: all exponents must be positive, found q^"
                    << rational_to_string(a.valuation()));
  EMF_REQUIRE(a.truncation(), ValueError,
              "series_exp: exact series would have an infinite-support exponential; "
              "set a truncation first");
  const Rational T = *a.truncation();
  long M = a.denom_lattice();
  if (T <= 0) {
    QSeries none;
    none = none.rebased(M);
    none.set_truncation_raw(T);
    return none;
  }
  long bound = key_bound(T, M);
  std::map<long, Coeff> f;
  f[0] = Rational(1);
  // k f_k = sum_j j a_j f_{k-j}, from f' = a' f
  for (long k = 1; k < bound; ++k) {
    Coeff s = Rational(0);
    for (auto& [j, aj] : a.terms()) {
      if (j > k) break;
      auto it = f.find(k - j);
      if (it == f.end()) continue;
      s = coeff_add(s, coeff_scale(coeff_mul(aj, it->second), Rational(j)));
    }
    s = coeff_scale(s, rational(1, k));
    if (!coeff_is_zero(s)) f[k] = s;
  }
  QSeries out;
  for (auto& [k, c] : f) out.set_term(rational(k, M), c);
  out = out.rebased(lcm_long(out.denom_lattice(), M));
  out.set_truncation_raw(T);
  return out;
}

QSeries series_log(const QSeries& a) {
  EMF_REQUIRE(!a.is_zero_series(), ValueError, "series_log: zero series");
  EMF_REQUIRE(a.valuation() == 0 && coeff_eq(a.leading_coeff(), Rational(1)), ValueError,
              "series_log: leading term must be exactly 1*q^0");
  if (a.terms().size() == 1 && !a.truncation()) return QSeries::zero();
  EMF_REQUIRE(a.truncation(), ValueError,
              "series_log: exact series would have an infinite-support logarithm; "
              "set a truncation first");
  long M = a.denom_lattice();
  // d = q d/dq (a), then log' = d / a, integrated term by term
  QSeries d;
  for (auto& [k, c] : a.terms())
    if (k != 0) d.set_term(rational(k, M), coeff_scale(c, rational(k, M)));
  d = d.rebased(lcm_long(d.denom_lattice(), M));
  d.set_truncation_raw(a.truncation());
  QSeries u = series_div(d, a);
  QSeries out;
  long Mu = u.denom_lattice();
  for (auto& [k, c] : u.terms()) {
    EMF_REQUIRE(k != 0, CheckError, "series_log: unexpected constant term in a'/a");
    out.set_term(rational(k, Mu), coeff_scale(c, rational(Mu, k)));
  }
  out = out.rebased(lcm_long(out.denom_lattice(), a.denom_lattice()));
  out.set_truncation_raw(a.truncation());
  return out;
}

QSeries eta_quotient(const std::vector<std::pair<Rational, long>>& spec, const Rational& prec) {
  long M = 1;
  Rational E0(0);
  for (auto& [s, e] : spec) {
    EMF_REQUIRE(s > 0, ValueError,
                "eta_quotient: scale must be positive, got " << rational_to_string(s));
    M = lcm_long(M, 24 * to_long(den(s)));
    E0 += s * Rational(e) / 24;
  }
  Rational X = prec - E0;
  if (X <= 0) {
    QSeries empty;
    empty = empty.rebased(M);
    empty.set_truncation_raw(prec);
    return empty;
  }
  QSeries acc = QSeries::constant(Rational(1)).rebased(M);
  acc.set_truncation_raw(X);
  for (auto& [s, e] : spec) {
    // pentagonal numbers: prod_n (1 - q^{s n}) = sum_k (-1)^k q^{s k(3k-1)/2}
    QSeries pent;
    pent = pent.rebased(M);
    for (long k = 0;; ++k) {
      Rational e1 = s * rational(k * (3 * k - 1), 2);
      Rational e2 = s * rational(k * (3 * k + 1), 2);
      if (e1 >= X && e2 >= X) break;
      Rational sign((k % 2 == 0) ? 1 : -1);
      if (e1 < X) pent.set_term(e1, sign);
      if (k > 0 && e2 < X) pent.set_term(e2, sign);
    }
    pent = pent.rebased(M);
    pent.set_truncation_raw(X);
    acc = series_mul(acc, series_pow(pent, Integer(e)));
  }
  return acc.shifted(E0).with_truncation(prec).compacted();
}

QSeries theta_nullwert(long m, long r, const Rational& prec) {
  EMF_REQUIRE(m >= 1, ValueError, "theta_nullwert: index must be positive, got " << m);
  QSeries s;
  s = s.rebased(4 * m);
  for (long t = 0;; ++t) {
    long a = r + 2 * m * t, b = r - 2 * m * (t + 1);
    Rational ea = rational(Integer(a) * a, Integer(4 * m));
    Rational eb = rational(Integer(b) * b, Integer(4 * m));
    bool any = false;
    if (ea < prec) {
      s.set_term(ea, Rational(1));
      any = true;
    }
    if (eb < prec) {
      s.set_term(eb, Rational(1));
      any = true;
    }
    if (!any) break;
  }
  s = s.rebased(lcm_long(s.denom_lattice(), 4 * m));
  s.set_truncation_raw(prec);
  return s.compacted();
}

namespace {
QSeries eisenstein(const Rational& prec, long power, long factor) {
  long n = prec <= 0 ? 0 : to_long(rational_ceil(prec));
  std::vector<Integer> sigma(static_cast<size_t>(std::max<long>(n, 1)), Integer(0));
  for (long d = 1; d < n; ++d) {
    Integer dp = pow_integer(Integer(d), static_cast<unsigned long>(power));
    for (long k = d; k < n; k += d) sigma[static_cast<size_t>(k)] += dp;
  }
  QSeries s;
  if (prec > 0) s.set_term(Rational(0), Rational(1));
  for (long k = 1; k < n; ++k)
    if (Rational(k) < prec)
      s.set_term(Rational(k), Rational(Integer(factor) * sigma[static_cast<size_t>(k)]));
  s.set_truncation_raw(prec);
  return s;
}
}  // namespace

QSeries eisenstein_e4(const Rational& prec) { return eisenstein(prec, 3, 240); }
QSeries eisenstein_e6(const Rational& prec) { return eisenstein(prec, 5, -504); }

QSeries klein_j(const Rational& prec) {
  Rational P = prec + 2;
  QSeries e4 = eisenstein_e4(P);
  QSeries delta = eta_quotient({{Rational(1), 24}}, P);
  return series_div(series_pow(e4, Integer(3)), delta).with_truncation(prec);
}

QSeries capital_J(const Rational& prec) {
  return (klein_j(prec) - QSeries::constant(Rational(744))).with_truncation(prec);
}

QSeries hauptmodul_t4(const Rational& prec) {
  return eta_quotient({{Rational(1), 8}, {Rational(4), -8}}, prec);
}

QSeries rescale(const QSeries& a, const Rational& s, const CyclotomicElement& zeta) {
  EMF_REQUIRE(s > 0, ValueError, "rescale: factor must be positive");
  bool trivial_twist = zeta.is_rational() && zeta.to_rational() == 1;
  // the twist exponent is the term's key on the smallest lattice carrying the
  // support, so it does not depend on how the series was built
  QSeries ac = a.compacted();
  long M = ac.denom_lattice();
  QSeries out;
  for (auto& [k, c] : ac.terms()) {
    Coeff v = c;
    if (!trivial_twist) v = coeff_mul(v, Coeff(zeta.pow(k)));
    if (!coeff_is_zero(v)) out.set_term(rational(k, M) * s, v);
  }
  out = out.rebased(lcm_long(out.denom_lattice(), M * to_long(den(s))));
  if (ac.truncation()) out.set_truncation_raw(*ac.truncation() * s);
  return out.compacted();
}

BigFloatComplex evaluate(const QSeries& a, const BigFloatComplex& tau, long digits) {
  EMF_REQUIRE(digits >= 1, ValueError, "evaluate: digits must be positive");
  double y = tau.im.to_double();
  EMF_REQUIRE(y > 0, ValueError, "evaluate: tau must lie in the upper half plane");
  const double ln10 = std::log(10.0);
  const double thresholdLog = -static_cast<double>(digits - 10);
  const double pi = 3.14159265358979323846;
  long M = a.denom_lattice();
  if (a.truncation()) {
    // certify the tail sum_{e >= T} exp(4 pi sqrt(e)) |q|^e against the threshold
    auto term_log10 = [&](double e) {
      double growth = 4.0 * pi * std::sqrt(std::max(e, 0.0));
      return (growth - 2.0 * pi * y * e) / ln10;
    };
    // log10 of an upper bound for the tail starting at key k0. The envelope in
    // log scale is concave with its maximum at e = 1/y^2, so past the turn the
    // first step ratio dominates all later ones and a geometric bound closes.
    auto tail_log10 = [&](long k0) {
      double e0 = static_cast<double>(k0) / static_cast<double>(M);
      if (e0 <= 1.0 / (y * y)) return std::numeric_limits<double>::infinity();
      double tl = term_log10(e0);
      double ratio = std::pow(10.0, term_log10(e0 + 1.0 / static_cast<double>(M)) - tl);
      if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
      return tl - std::log10(1.0 - ratio);
    };
    long kT = key_bound(*a.truncation(), M);
    if (!(tail_log10(kT) < thresholdLog)) {
      // locate the order that would have sufficed, for the error message
      long hi = std::max<long>(kT, static_cast<long>((1.0 / (y * y)) * static_cast<double>(M)) + 2);
      int guard = 0;
      while (!(tail_log10(hi) < thresholdLog) && guard++ < 60) hi *= 2;
      long lo = kT;
      while (lo + 1 < hi) {
        long mid = lo + (hi - lo) / 2;
        if (tail_log10(mid) < thresholdLog)
          hi = mid;
        else
          lo = mid;
      }
      throw PrecisionError("evaluate: truncation order " + rational_to_string(*a.truncation()) +
                           " cannot certify " + std::to_string(digits) +
                           " digits at this height; required order about q^" +
                           rational_to_string(rational(hi, M)));
    }
  }
  mpfr_prec_t bits = BigFloatComplex::bits_for(digits + 10);
  BigFloatComplex sum = {BigFloat(bits), BigFloat(bits), digits};
  auto coeff_numeric = [&](const Coeff& c) -> BigFloatComplex {
    if (std::holds_alternative<Rational>(c))
      return {BigFloat::from_rational(std::get<Rational>(c), bits), BigFloat(bits), digits};
    if (std::holds_alternative<QuadraticElement>(c)) {
      const auto& q = std::get<QuadraticElement>(c);
      BigFloat root = BigFloat::from_long(q.discriminant(), bits).sqrt();
      return {BigFloat::from_rational(q.a(), bits) + BigFloat::from_rational(q.b(), bits) * root,
              BigFloat(bits), digits};
    }
    const auto& z = std::get<CyclotomicElement>(c);
    BigFloatComplex acc = {BigFloat(bits), BigFloat(bits), digits};
    for (auto& [k, r] : z.coeffs()) {
      BigFloatComplex phase =
          exp_2pi_i({BigFloat::from_rational(rational(k, z.order()), bits), BigFloat(bits), digits});
      BigFloat rr = BigFloat::from_rational(r, bits);
      acc = acc + BigFloatComplex{rr * phase.re, rr * phase.im, digits};
    }
    return acc;
  };
  for (auto& [k, c] : a.terms()) {
    BigFloat e = BigFloat::from_rational(rational(k, M), bits);
    BigFloatComplex etau = {e * tau.re, e * tau.im, digits};
    sum = sum + coeff_numeric(c) * exp_2pi_i(etau);
  }
  sum.digits = digits;
  return sum;
}

namespace {
// shared walk for series_agree / require_series_agree
template <class OnMismatch>
bool walk_agree(const QSeries& a, const QSeries& b, OnMismatch onMismatch) {
  long L = lcm_long(a.denom_lattice(), b.denom_lattice());
  QSeries ra = a.rebased(L), rb = b.rebased(L);
  auto T = min_trunc(a.truncation(), b.truncation());
  long bound = T ? key_bound(*T, L) : 0;
  std::set<long> keys;
  for (auto& [k, c] : ra.terms())
    if (!T || k < bound) keys.insert(k);
  for (auto& [k, c] : rb.terms())
    if (!T || k < bound) keys.insert(k);
  for (long k : keys) {
    Rational e = rational(k, L);
    Coeff ca = ra.coefficient(e), cb = rb.coefficient(e);
    if (!coeff_eq(ca, cb)) {
      onMismatch(e, ca, cb);
      return false;
    }
  }
  return true;
}
}  // namespace

bool series_agree(const QSeries& a, const QSeries& b) {
  return walk_agree(a, b, [](const Rational&, const Coeff&, const Coeff&) {});
}

void require_series_agree(const QSeries& a, const QSeries& b, const std::string& what) {
  walk_agree(a, b, [&](const Rational& e, const Coeff& ca, const Coeff& cb) {
    EMF_REQUIRE(false, CheckError,
                what << ": mismatch at q^" << rational_to_string(e) << ": " << coeff_to_string(ca)
                     << " vs " << coeff_to_string(cb));
  });
}

std::string QSeries::to_string(size_t maxTerms) const {
  if (terms_.empty()) return trunc_ ? "O(q^" + rational_to_string(*trunc_) + ")" : "0";
  std::ostringstream os;
  size_t shown = 0;
  for (auto& [k, c] : terms_) {
    if (shown++ >= maxTerms) {
      os << " + ...";
      break;
    }
    if (shown > 1) os << " + ";
    os << "(" << coeff_to_string(c) << ")*q^(" << rational_to_string(exponent_of(k)) << ")";
  }
  if (trunc_) os << " + O(q^" << rational_to_string(*trunc_) << ")";
  return os.str();
}

}  // namespace emf
