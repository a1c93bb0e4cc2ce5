#include "emf/repackage.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "emf/bigfloat.hpp"
#include "emf/error.hpp"
#include "emf/weil.hpp"

namespace emf {
namespace {

long mod_pos(long a, long n) { return ((a % n) + n) % n; }

long floordiv(long a, long b) {
  long q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// x*a + y*b = gcd(a, b) >= 0
long ext_gcd(long a, long b, long& x, long& y) {
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    long q = a / b;
    long t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

long abs_long(long n) { return n < 0 ? -n : n; }

Rational frac_part(const Rational& x) { return x - Rational(rational_floor(x)); }

// sawtooth ((x)): 0 on integers, x - floor(x) - 1/2 otherwise
Rational sawtooth(const Rational& x) {
  if (is_integer(x)) return Rational(0);
  return frac_part(x) - rational(1, 2);
}

// Dedekind sum s(h, k) for k > 0
Rational dedekind_sum(long h, long k) {
  Rational s(0);
  for (long r = 1; r < k; ++r) s += rational(r, k) * sawtooth(rational(h, k) * r);
  return s;
}

// eta(g tau) = eta_multiplier(g) * (c tau + d)^{1/2} eta(tau) for c > 0, with
// the principal branch of the square root; the multiplier is an exact 24th
// root of unity.
CyclotomicElement eta_multiplier(const SL2& g) {
  EMF_REQUIRE(sl2_det(g) == 1 && g.c > 0, ValueError,
              "eta_multiplier: need determinant 1 and c > 0");
  Rational x = rational(g.a + g.d, 12 * g.c) - dedekind_sum(g.d, g.c);
  Rational y = frac_part(x / 2 - rational(1, 8));
  Rational t = y * 24;
  EMF_REQUIRE(is_integer(t), CheckError,
              "eta_multiplier: phase " << rational_to_string(y) << " is not a 24th root of unity");
  return CyclotomicElement::root_of_unity(24, to_long(num(t)));
}

struct Gen {
  bool isS;
  long n;  // T^n when !isS
};

SL2 gen_matrix(const Gen& g) { return g.isS ? SL2{0, -1, 1, 0} : SL2{1, g.n, 0, 1}; }

// g as a word in S = [[0,-1],[1,0]] and T^n, product taken in word order;
// the reconstruction is asserted.
std::vector<Gen> sl2_word(const SL2& g0) {
  EMF_REQUIRE(sl2_det(g0) == 1, ValueError, "sl2_word: determinant must be 1");
  std::vector<Gen> w;
  SL2 g = g0;
  while (g.c != 0) {
    long n = floordiv(g.a, g.c);
    if (n != 0) w.push_back({false, n});
    w.push_back({true, 0});
    // peel T^n S off the left: g <- S^{-1} T^{-n} g
    long a = g.a - n * g.c, b = g.b - n * g.d;
    g = SL2{g.c, g.d, -a, -b};
  }
  if (g.a == 1) {
    if (g.b != 0) w.push_back({false, g.b});
  } else {
    // g = -T^{-b} = S^2 T^{-b}
    w.push_back({true, 0});
    w.push_back({true, 0});
    if (g.b != 0) w.push_back({false, -g.b});
  }
  SL2 p{};
  for (const Gen& gen : w) p = sl2_mul(p, gen_matrix(gen));
  EMF_REQUIRE(p.a == g0.a && p.b == g0.b && p.c == g0.c && p.d == g0.d, CheckError,
              "sl2_word: generator product mismatch");
  return w;
}

using CycMat = std::vector<std::vector<CyclotomicElement>>;

CycMat cyc_identity(size_t n) {
  CycMat m(n, std::vector<CyclotomicElement>(n, CyclotomicElement(Rational(0))));
  for (size_t i = 0; i < n; ++i) m[i][i] = CyclotomicElement(Rational(1));
  return m;
}

CycMat mat_mul(const CycMat& A, const CycMat& B) {
  size_t n = A.size();
  CycMat C(n, std::vector<CyclotomicElement>(n, CyclotomicElement(Rational(0))));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (A[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) {
        if (B[k][j].is_zero()) continue;
        C[i][j] = C[i][j] + A[i][k] * B[k][j];
      }
    }
  return C;
}

CycMat rho_generator(const WeilRep& W, const Gen& g) {
  if (g.isS) return W.rho_s();
  const auto& diag = W.rho_t_diag();
  CycMat m = cyc_identity(diag.size());
  for (size_t i = 0; i < diag.size(); ++i) m[i][i] = diag[i].pow(g.n);
  return m;
}

// principal branch: sqrt((|z| + x)/2) + i sign(y) sqrt((|z| - x)/2)
BigFloatComplex principal_sqrt(const BigFloatComplex& z) {
  BigFloat r = z.abs();
  BigFloat two = BigFloat::from_long(2, r.precision());
  BigFloat u = ((r + z.re) / two).sqrt();
  BigFloat v = ((r - z.re) / two).sqrt();
  if (z.im.is_negative()) v = -v;
  return {u, v, z.digits};
}

BigFloatComplex cplx(long n, long digits) {
  return BigFloatComplex::make(Rational(n), Rational(0), digits);
}

BigFloatComplex moebius_apply(const SL2& g, const BigFloatComplex& t) {
  return (cplx(g.a, t.digits) * t + cplx(g.b, t.digits)) /
         (cplx(g.c, t.digits) * t + cplx(g.d, t.digits));
}

// rho_m((gamma, u))^{-1} for the principal-branch lift u(tau) = (c tau + d)^{1/2}.
// The generator word fixes the matrix up to the center; the residual sign is
// pinned by composing the branch factors of the word numerically at an
// interior point and comparing against 1/u(gamma^{-1} tau).
CycMat rho_of_inverse(const WeilRep& W, const SL2& gamma) {
  SL2 ginv{gamma.d, -gamma.b, -gamma.c, gamma.a};
  std::vector<Gen> word = sl2_word(ginv);

  CycMat P = cyc_identity(W.rho_t_diag().size());
  for (const Gen& g : word) P = mat_mul(P, rho_generator(W, g));

  const long digits = 60;
  BigFloatComplex tau0 = BigFloatComplex::make(rational(3, 10), rational(17, 10), digits);
  BigFloatComplex u = cplx(1, digits);
  BigFloatComplex cur = tau0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->isS) {
      u = principal_sqrt(cur) * u;
      cur = moebius_apply(SL2{0, -1, 1, 0}, cur);
    } else {
      cur = cur + cplx(it->n, digits);
    }
  }
  BigFloatComplex target =
      cplx(1, digits) /
      principal_sqrt(cplx(gamma.c, digits) * moebius_apply(ginv, tau0) + cplx(gamma.d, digits));
  BigFloatComplex ratio = target / u;
  BigFloat tol = BigFloat::from_rational(rational(Integer(1), pow_integer(Integer(10), 30)),
                                         BigFloatComplex::bits_for(digits));
  if (((ratio - cplx(1, digits)).abs() - tol).is_negative()) return P;
  EMF_REQUIRE(((ratio + cplx(1, digits)).abs() - tol).is_negative(), CheckError,
              "rho_of_inverse: branch sign did not resolve to +1 or -1");
  for (auto& row : P)
    for (auto& z : row) z = -z;
  return P;
}

// M = g1 * [[A, B], [0, D]] with det M = A D > 0, A = gcd(M11, M21), 0 <= B < D
struct Hermite {
  SL2 g1;
  long A, B, D;
};

Hermite hermite_split(long m11, long m12, long m21, long m22) {
  long det = m11 * m22 - m12 * m21;
  EMF_REQUIRE(det > 0, ValueError, "hermite_split: determinant must be positive");
  long x, y;
  long A = ext_gcd(m11, m21, x, y);
  long alpha = m11 / A, gam = m21 / A;
  long delta = x, beta = -y;  // alpha delta - beta gam = 1
  long B0 = delta * m12 - beta * m22;
  long D = det / A;
  long t = floordiv(B0, D);
  SL2 g1{alpha, alpha * t + beta, gam, gam * t + delta};
  SL2 rec = sl2_mul(g1, SL2{A, B0 - t * D, 0, D});
  EMF_REQUIRE(sl2_det(g1) == 1 && rec.a == m11 && rec.b == m12 && rec.c == m21 && rec.d == m22,
              CheckError, "hermite_split: reconstruction mismatch");
  return {g1, A, B0 - t * D, D};
}

// eta((A tau + B)/D) = e(B/24D) q^{A/24D} prod_{n>=1} (1 - e(nB/D) q^{nA/D}),
// exact with cyclotomic phases, truncated strictly below T
QSeries eta_shifted(long A, long B, long D, const Rational& T) {
  EMF_REQUIRE(A > 0 && D > 0, ValueError, "eta_shifted: need A > 0 and D > 0");
  Rational val = rational(A, 24 * D);
  QSeries out =
      QSeries::monomial(Coeff(CyclotomicElement::root_of_unity(24 * D, B)), val).with_truncation(T);
  for (long n = 1; val + rational(n * A, D) < T; ++n) {
    QSeries fac = QSeries::constant(Coeff(Rational(1)));
    fac.set_term(rational(n * A, D), Coeff(-CyclotomicElement::root_of_unity(D, n * B)));
    out *= fac;
  }
  return out;
}

const QSeries& zero_series() {
  static const QSeries z;
  return z;
}

}  // namespace

SL2 sl2_mul(const SL2& g, const SL2& h) {
  return SL2{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
             g.c * h.b + g.d * h.d};
}

long sl2_det(const SL2& g) { return g.a * g.d - g.b * g.c; }

SL2 gamma0_for(long i, long j, long N) {
  EMF_REQUIRE(N >= 1, ValueError, "gamma0_for: level must be positive");
  long ii = mod_pos(i, N), jj = mod_pos(j, N);
  long n = gcd_long(gcd_long(ii, jj), N);  // gcd(0, 0, N) = N
  long np = N / n;
  if (np == 1) return SL2{};
  long c0 = (ii / n) % np, d0 = (jj / n) % np;
  for (long s = 0; s <= 64; ++s) {
    long c = c0 + s * np;
    for (long t = 0; t <= c + 1; ++t) {
      long d = d0 + t * np;
      if ((c == 0 && d == 0) || gcd_long(c, d) != 1) continue;
      long x, y;
      ext_gcd(d, c, x, y);  // x d + y c = 1
      long a = x, b = -y;
      if (c > 0) {
        long k = floordiv(a, c);
        a -= k * c;
        b -= k * d;
      }
      SL2 g{a, b, c, d};
      EMF_REQUIRE(sl2_det(g) == 1, CheckError, "gamma0_for: completion is not unimodular");
      return g;
    }
  }
  EMF_REQUIRE(false, CheckError,
              "gamma0_for: no completion found for (" << i << "," << j << ") at level " << N);
  return SL2{};
}

std::map<long, QSeries> eta_slash(long index, const std::map<long, EtaQuotientSpec>& spec,
                                  const SL2& gamma, const Rational& prec,
                                  const Rational& thetaMultiplier) {
  EMF_REQUIRE(index != 0, ValueError, "eta_slash: index must be nonzero");
  EMF_REQUIRE(sl2_det(gamma) == 1, ValueError, "eta_slash: gamma must have determinant 1");
  EMF_REQUIRE(gamma.c > 0, ValueError, "eta_slash: gamma must have a positive lower-left entry");
  const long R = 2 * abs_long(index);

  std::map<long, const EtaQuotientSpec*> comps;
  for (const auto& [r, qs] : spec) {
    long rr = mod_pos(r, R);
    EMF_REQUIRE(comps.count(rr) == 0, ValueError, "eta_slash: duplicate component residue " << rr);
    comps.emplace(rr, &qs);
  }

  // Transform each source component.  For eta(b tau) with b = p/q the matrix
  // [[p a, p b], [q c, q d]] factors as g1 [[A, B], [0, D]], so
  //   eta(b gamma tau) = eps*(g1) sqrt(q/D) (c tau + d)^{1/2} eta((A tau + B)/D);
  // the weight-1/2 budget makes the (c tau + d) powers cancel exactly.
  std::map<long, QSeries> transformed;
  for (const auto& [r, qsp] : comps) {
    const EtaQuotientSpec& qs = *qsp;
    long wt = 0;
    for (const auto& [b, e] : qs.factors) {
      EMF_REQUIRE(b > 0, ValueError, "eta_slash: eta scale must be positive");
      wt += e;
    }
    EMF_REQUIRE(wt == 1, ValueError, "eta_slash: component " << r << " has eta exponent sum " << wt
                                                             << ", need 1 (weight mismatch)");

    struct Piece {
      long A, B, D, e;
    };
    std::vector<Piece> pieces;
    CyclotomicElement phase(qs.prefactor);
    Rational radicand(1);
    Rational slack(0);
    for (const auto& [b, e] : qs.factors) {
      if (e == 0) continue;
      long p = to_long(num(b)), q = to_long(den(b));
      Hermite h = hermite_split(p * gamma.a, p * gamma.b, q * gamma.c, q * gamma.d);
      phase = phase * eta_multiplier(h.g1).pow(e);
      radicand *= pow_rational(rational(q, h.D), e);
      slack += rational(2 * abs_long(e) * h.A, 24 * h.D);
      pieces.push_back({h.A, h.B, h.D, e});
    }
    Rational PP = prec + slack + 2;
    QSeries ser = QSeries::constant(Coeff(Rational(1))).with_truncation(PP);
    for (const Piece& pc : pieces)
      ser *= series_pow(eta_shifted(pc.A, pc.B, pc.D, PP), Integer(pc.e));
    transformed.emplace(r, ser.scaled(coeff_mul(Coeff(phase), Coeff(sqrt_rational_cyclo(radicand)))));
  }

  // Remix through rho_m((gamma, principal))^{-1} and add the theta correction
  // afterwards: the theta vector is fixed by every slash, so the correction
  // rides through unchanged.
  WeilRep W(index, 1);
  CycMat Rinv = rho_of_inverse(W, gamma);
  std::map<long, QSeries> out;
  for (long r = 0; r < R; ++r) {
    QSeries acc;
    for (const auto& [rp, E] : transformed) {
      const CyclotomicElement& z = Rinv[static_cast<size_t>(r)][static_cast<size_t>(rp)];
      if (z.is_zero()) continue;
      acc += E.scaled(Coeff(z));
    }
    if (thetaMultiplier != 0) acc += theta_nullwert(index, r, prec).scaled(Coeff(thetaMultiplier));
    if (!acc.truncation().has_value()) {
      acc.set_truncation_raw(prec);
    } else {
      EMF_REQUIRE(*acc.truncation() >= prec, CheckError, "eta_slash: internal truncation shortfall");
      acc = acc.with_truncation(prec);
    }
    out.emplace(r, acc);
  }
  return out;
}

std::map<long, QSeries> eta_slash_S(long index, const std::map<long, EtaQuotientSpec>& spec,
                                    const Rational& prec, const Rational& thetaMultiplier) {
  return eta_slash(index, spec, SL2{0, -1, 1, 0}, prec, thetaMultiplier);
}

EtaSlashEngine::EtaSlashEngine(long index, long level, std::map<long, EtaMemberSpec> members)
    : m_(index), level_(level) {
  EMF_REQUIRE(m_ != 0, ValueError, "EtaSlashEngine: index must be nonzero");
  EMF_REQUIRE(level_ >= 1, ValueError, "EtaSlashEngine: level must be positive");
  const long R = 2 * abs_long(m_);
  for (auto& [n, ms] : members) {
    EMF_REQUIRE(n >= 1 && level_ % n == 0, ValueError,
                "EtaSlashEngine: slot " << n << " does not divide the level " << level_);
    EtaMemberSpec norm;
    norm.theta = ms.theta;
    for (auto& [r, qs] : ms.components) {
      long wt = 0;
      for (const auto& [b, e] : qs.factors) {
        EMF_REQUIRE(b > 0, ValueError, "EtaSlashEngine: eta scale must be positive");
        wt += e;
      }
      EMF_REQUIRE(wt == 1, ValueError, "EtaSlashEngine: slot "
                                           << n << " component " << r << " has eta exponent sum "
                                           << wt << ", need 1 (weight mismatch)");
      long rr = mod_pos(r, R);
      EMF_REQUIRE(norm.components.count(rr) == 0, ValueError,
                  "EtaSlashEngine: duplicate component residue " << rr << " in slot " << n);
      norm.components.emplace(rr, std::move(qs));
    }
    members_.emplace(n, std::move(norm));
  }
}

const EtaMemberSpec& EtaSlashEngine::member_spec(long divisor) const {
  auto it = members_.find(divisor);
  EMF_REQUIRE(it != members_.end(), ValueError,
              "EtaSlashEngine: no eta description for divisor " << divisor << " (coverage gap)");
  return it->second;
}

std::map<long, QSeries> EtaSlashEngine::expand(long divisor, const Rational& prec) const {
  const EtaMemberSpec& ms = member_spec(divisor);
  const long R = 2 * abs_long(m_);
  std::map<long, QSeries> out;
  for (long r = 0; r < R; ++r) {
    QSeries acc;
    auto it = ms.components.find(r);
    if (it != ms.components.end())
      acc = eta_quotient(it->second.factors, prec).scaled(Coeff(it->second.prefactor));
    if (ms.theta != 0) acc += theta_nullwert(m_, r, prec).scaled(Coeff(ms.theta));
    if (!acc.truncation().has_value()) acc.set_truncation_raw(prec);
    out.emplace(r, acc);
  }
  return out;
}

std::map<long, QSeries> EtaSlashEngine::slash(long divisor, const SL2& gamma,
                                              const Rational& prec) const {
  const EtaMemberSpec& ms = member_spec(divisor);
  return eta_slash(m_, ms.components, gamma, prec, ms.theta);
}

FormFamily::FormFamily(long level, std::map<long, VectorValuedForm> members)
    : N_(level), members_(std::move(members)) {
  EMF_REQUIRE(N_ >= 1, ValueError, "FormFamily: level must be positive");
  EMF_REQUIRE(!members_.empty(), ValueError, "FormFamily: no members");
  m_ = members_.begin()->second.index();
  for (long n = 1; n <= N_; ++n) {
    if (N_ % n != 0) continue;
    EMF_REQUIRE(members_.count(n) != 0, ValueError,
                "FormFamily: missing member for divisor " << n << " of the level " << N_);
  }
  for (const auto& [n, f] : members_) {
    EMF_REQUIRE(n >= 1 && N_ % n == 0, ValueError,
                "FormFamily: slot " << n << " is not a divisor of the level " << N_);
    EMF_REQUIRE(f.index() == m_, ValueError,
                "FormFamily: member index mismatch (" << f.index() << " vs " << m_ << ")");
    EMF_REQUIRE(f.level() == N_ / n, ValueError,
                "FormFamily: member at divisor " << n << " declares level " << f.level()
                                                 << ", expected " << N_ / n);
  }
}

const VectorValuedForm& FormFamily::member(long divisor) const {
  auto it = members_.find(divisor);
  EMF_REQUIRE(it != members_.end(), ValueError, "FormFamily: no member for divisor " << divisor);
  return it->second;
}

CheckForm::CheckForm(long index, long level, std::map<Label, QSeries> components)
    : m_(index), N_(level) {
  EMF_REQUIRE(m_ != 0, ValueError, "CheckForm: index must be nonzero");
  EMF_REQUIRE(N_ >= 1, ValueError, "CheckForm: level must be positive");
  const long R = 2 * abs_long(m_);
  for (auto& [key, s] : components) {
    const auto& [i, j, r] = key;
    Label k2{mod_pos(i, N_), mod_pos(j, N_), mod_pos(r, R)};
    EMF_REQUIRE(comps_.count(k2) == 0, ValueError,
                "CheckForm: duplicate label after index reduction");
    if (s.is_zero_series() && !s.truncation().has_value()) continue;  // exact zero = absent
    comps_.emplace(k2, std::move(s));
  }
  for (const auto& [key, s] : comps_) {
    const auto& [i, j, r] = key;
    Rational target = frac_part(rational(r * r, 4 * m_) + rational(i * j, N_));
    for (const auto& [k, c] : s.terms()) {
      Rational e = s.exponent_of(k);
      EMF_REQUIRE(frac_part(e) == target, ValueError,
                  "CheckForm: component (" << i << "," << j << "," << r << ") is supported at "
                                           << rational_to_string(e) << ", outside "
                                           << rational_to_string(target) << " + Z");
      if (coeff_is_rational(c)) continue;
      EMF_REQUIRE(std::holds_alternative<CyclotomicElement>(c), ValueError,
                  "CheckForm: component (" << i << "," << j << "," << r
                                           << ") has a coefficient outside Q(zeta_" << N_ << ")");
      long ord = std::get<CyclotomicElement>(c).normalized().order();
      EMF_REQUIRE(N_ % ord == 0, ValueError,
                  "CheckForm: component (" << i << "," << j << "," << r
                                           << ") has a coefficient of order " << ord
                                           << ", not dividing the level " << N_);
    }
  }
  const Rational sign(m_ > 0 ? 1 : -1);
  for (const auto& [key, s] : comps_) {
    const auto& [i, j, r] = key;
    Label mir{mod_pos(-i, N_), mod_pos(-j, N_), mod_pos(-r, R)};
    auto it = comps_.find(mir);
    const QSeries& other = it == comps_.end() ? zero_series() : it->second;
    EMF_REQUIRE(series_agree(other, s.scaled(Coeff(sign))), ValueError,
                "CheckForm: symmetry violated between (" << i << "," << j << "," << r
                                                         << ") and its negative");
  }
}

const QSeries& CheckForm::component(long i, long j, long r) const {
  auto it = comps_.find(Label{mod_pos(i, N_), mod_pos(j, N_), mod_pos(r, 2 * abs_long(m_))});
  return it == comps_.end() ? zero_series() : it->second;
}

std::map<std::pair<long, long>, QSeries> check_row0(const FormFamily& fam) {
  const long N = fam.level();
  const long R = 2 * abs_long(fam.index());
  std::map<std::pair<long, long>, QSeries> out;
  for (long j = 0; j < N; ++j)
    for (long r = 0; r < R; ++r) {
      QSeries acc;
      for (long jp = 0; jp < N; ++jp) {
        CyclotomicElement z = CyclotomicElement::root_of_unity(N, -j * jp);
        z *= rational(1, N);
        acc += fam.member(gcd_long(jp, N)).component(r).scaled(Coeff(z));
      }
      out.emplace(std::make_pair(j, r), acc);
    }
  return out;
}

CheckForm repackage_full(const FormFamily& fam, const EtaSlashEngine& engine) {
  const long N = fam.level();
  const long m = fam.index();
  const long R = 2 * abs_long(m);
  EMF_REQUIRE(engine.index() == m && engine.level() == N, ValueError,
              "repackage_full: engine index/level (" << engine.index() << "," << engine.level()
                                                     << ") do not match the family (" << m << ","
                                                     << N << ")");

  std::optional<Rational> prec;
  for (const auto& [n, f] : fam.members()) {
    (void)n;
    for (const QSeries& s : f.component_table())
      if (s.truncation().has_value() && (!prec || *s.truncation() < *prec)) prec = s.truncation();
  }
  EMF_REQUIRE(prec.has_value(), ValueError,
              "repackage_full: no member component carries a truncation");

  for (const auto& [n, f] : fam.members()) {
    if (!engine.covers(n)) continue;
    std::map<long, QSeries> exp = engine.expand(n, *prec);
    for (long r = 0; r < R; ++r)
      require_series_agree(exp.at(r), f.component(r),
                           "engine expansion of the divisor-" + std::to_string(n) + " slot");
  }

  // row i = 0 straight from the members, rows i != 0 through the slash at the
  // deterministic bottom-row completion; then average in j.
  std::map<std::pair<long, long>, std::map<long, QSeries>> hat;
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j) {
      if (i == 0) {
        const VectorValuedForm& f = fam.member(gcd_long(j, N));
        std::map<long, QSeries> row;
        for (long r = 0; r < R; ++r) row.emplace(r, f.component(r));
        hat.emplace(std::make_pair(i, j), std::move(row));
      } else {
        long n = gcd_long(gcd_long(i, j), N);
        hat.emplace(std::make_pair(i, j), engine.slash(n, gamma0_for(i, j, N), *prec));
      }
    }

  std::map<CheckForm::Label, QSeries> comps;
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j)
      for (long r = 0; r < R; ++r) {
        QSeries acc;
        for (long jp = 0; jp < N; ++jp) {
          CyclotomicElement z = CyclotomicElement::root_of_unity(N, -j * jp);
          z *= rational(1, N);
          acc += hat.at({i, jp}).at(r).scaled(Coeff(z));
        }
        comps.emplace(CheckForm::Label{i, j, r}, acc);
      }
  return CheckForm(m, N, std::move(comps));
}

ComponentTable inverse_repackage(const CheckForm& f) {
  const long N = f.level();
  const long R = 2 * abs_long(f.index());
  ComponentTable out;
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j) {
      std::map<long, QSeries> row;
      for (long r = 0; r < R; ++r) {
        QSeries acc;
        for (long jp = 0; jp < N; ++jp)
          acc += f.component(i, jp, r)
                     .scaled(Coeff(CyclotomicElement::root_of_unity(N, j * jp)));
        row.emplace(r, acc);
      }
      out.emplace(std::make_pair(i, j), std::move(row));
    }
  return out;
}

}  // namespace emf
