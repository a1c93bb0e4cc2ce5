#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "emf/bigfloat.hpp"
#include "emf/repackage.hpp"
#include "emf/weil.hpp"

using namespace emf;

namespace {

template <class Fn>
std::string message_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

EtaQuotientSpec quo(const Rational& pref, std::vector<std::pair<Rational, long>> fs) {
  EtaQuotientSpec s;
  s.prefactor = pref;
  s.factors = std::move(fs);
  return s;
}

// index-1 level-2 pair: component 0 integral, component 1 at exponents 1/4 + Z
EtaQuotientSpec pair_spec0() {
  return quo(Rational(128), {{Rational(1), 6}, {Rational(4), 14}, {Rational(2), -19}});
}
EtaQuotientSpec pair_spec1() {
  return quo(Rational(1), {{Rational(2), 23}, {Rational(1), -8}, {Rational(4), -14}});
}

// eta-quotient models of the index-1 theta components
EtaQuotientSpec theta1_spec0() {
  return quo(Rational(1), {{Rational(2), 5}, {Rational(1), -2}, {Rational(4), -2}});
}
EtaQuotientSpec theta1_spec1() { return quo(Rational(2), {{Rational(4), 2}, {Rational(2), -1}}); }

QSeries eq_series(const EtaQuotientSpec& s, const Rational& prec) {
  return eta_quotient(s.factors, prec).scaled(Coeff(s.prefactor));
}

using Table = std::vector<std::pair<long, long>>;  // (4 * exponent, coefficient)

// inverse-transform row (1,0) of the level-2 eta pair, complete below q^6
const Table kHat10C0 = {{0, 8},           {2, 768},          {4, 13328},        {6, 125440},
                        {8, 854016},      {10, 4698624},     {12, 22163456},    {14, 92912640},
                        {16, 354476048},  {18, 1251443968},  {20, 4138745856},  {22, 12942094848}};
const Table kHat10C1 = {{1, -112},        {3, -3584},        {5, -43008},       {7, -337920},
                        {9, -2048112},    {11, -10375680},   {13, -45975552},   {15, -183416832},
                        {17, -671956992}, {19, -2293025280}, {21, -7366512640}, {23, -22462973952}};

// repackaged components of the same family (spot values)
const Table kCheck10C0 = {{0, 8}, {4, 13328}, {8, 854016}, {12, 22163456}};
const Table kCheck10C1 = {{1, -112}, {5, -43008}, {9, -2048112}, {13, -45975552}};
const Table kCheck11C0 = {{2, 768}, {6, 125440}, {10, 4698624}};
const Table kCheck11C1 = {{3, -3584}, {7, -337920}, {11, -10375680}};

// the same family with members doubled and -8 theta added on top
const Table kTracedHat10C0 = {{0, 8},           {2, 1536},         {4, 26640},
                              {6, 250880},      {8, 1708032},      {10, 9397248},
                              {12, 44326912},   {14, 185825280},   {16, 708952080},
                              {18, 2502887936}, {20, 8277491712},  {22, 25884189696}};
const Table kTracedHat10C1 = {{1, -240},         {3, -7168},         {5, -86016},
                              {7, -675840},      {9, -4096240},      {11, -20751360},
                              {13, -91951104},   {15, -366833664},   {17, -1343913984},
                              {19, -4586050560}, {21, -14733025280}, {23, -44925947904}};
const Table kTracedCheck10C0 = {{0, 8}, {4, 26640}, {8, 1708032}, {12, 44326912}};
const Table kTracedCheck10C1 = {{1, -240}, {5, -86016}, {9, -4096240}, {13, -91951104}};

QSeries from_table(const Table& t, const Rational& T) {
  QSeries s;
  for (const auto& [k4, v] : t) s.set_term(rational(k4, 4), Rational(v));
  s.set_truncation_raw(T);
  return s;
}

void check_spots(const QSeries& s, const Table& t) {
  for (const auto& [k4, v] : t)
    CHECK(coeff_to_rational(s.coefficient(rational(k4, 4))) == Rational(v));
}

// level-2 eta-pair family: member 1 from the quotients, member 2 unfolded
// from the discriminant-3 plus-space form
FormFamily pair_family(const Rational& prec) {
  std::map<long, QSeries> c1;
  c1[0] = eq_series(pair_spec0(), prec);
  c1[1] = eq_series(pair_spec1(), prec);
  VectorValuedForm f1(1, c1, 2);
  VectorValuedForm f2 = kohnen_unfold(plus_form(3, 4 * to_long(rational_ceil(prec))).series());
  std::map<long, VectorValuedForm> mem;
  mem.emplace(1, f1);
  mem.emplace(2, f2);
  return FormFamily(2, std::move(mem));
}

VectorValuedForm theta_member(long m, const Rational& scale, const Rational& prec, long level) {
  std::map<long, QSeries> comps;
  for (long r = 0; r < 2 * m; ++r) comps[r] = theta_nullwert(m, r, prec).scaled(Coeff(scale));
  return VectorValuedForm(m, comps, level);
}

long phi_of(long n) {
  long p = 1;
  for (long d = 2; d <= n; ++d) {
    if (n % d != 0) continue;
    long e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    long pk = 1;
    for (long k = 1; k < e; ++k) pk *= d;
    p *= pk * (d - 1);
  }
  return p;
}

long mobius_of(long n) {
  long mu = 1;
  for (long d = 2; d <= n; ++d) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  return mu;
}

// Ramanujan sum c_d(k) = mu(d/g) phi(d) / phi(d/g), g = gcd(k, d)
Rational ramanujan_c(long d, long k) {
  long g = std::gcd(((k % d) + d) % d, d);
  if (g == 0) g = d;
  long dg = d / g;
  long mu = mobius_of(dg);
  if (mu == 0) return Rational(0);
  return rational(mu * phi_of(d), phi_of(dg));
}

BigFloatComplex coeff_numeric(const Coeff& c, long digits) {
  if (coeff_is_rational(c)) return BigFloatComplex::make(coeff_to_rational(c), Rational(0), digits);
  const auto& z = std::get<CyclotomicElement>(c);
  BigFloatComplex acc = BigFloatComplex::zero(digits);
  for (const auto& [k, a] : z.coeffs())
    acc = acc + BigFloatComplex::make(a, Rational(0), digits) *
                    exp_2pi_i(BigFloatComplex::make(rational(k, z.order()), Rational(0), digits));
  return acc;
}

}  // namespace

TEST_CASE("deterministic bottom-row completions are unimodular and congruent") {
  SL2 s = gamma0_for(1, 0, 2);
  CHECK(s.a == 0);
  CHECK(s.b == -1);
  CHECK(s.c == 1);
  CHECK(s.d == 0);
  SL2 g11 = gamma0_for(1, 1, 2);
  CHECK(g11.a == 0);
  CHECK(g11.b == -1);
  CHECK(g11.c == 1);
  CHECK(g11.d == 1);
  SL2 id = gamma0_for(0, 2, 2);
  CHECK((id.a == 1 && id.b == 0 && id.c == 0 && id.d == 1));

  for (long N = 1; N <= 6; ++N)
    for (long i = 0; i < N; ++i)
      for (long j = 0; j < N; ++j) {
        SL2 g = gamma0_for(i, j, N);
        CHECK(sl2_det(g) == 1);
        long n = std::gcd(std::gcd(i, j), N);
        if (n == 0) n = N;
        long np = N / n;
        CHECK((g.c - i / n) % np == 0);
        CHECK((g.d - j / n) % np == 0);
        if (i % N != 0) CHECK(g.c > 0);
      }

  CHECK(message_of([] { gamma0_for(0, 0, 0); }).find("level") != std::string::npos);
}

TEST_CASE("a bare eta picks up exactly the Gauss-sum scale under the S slash") {
  std::map<long, EtaQuotientSpec> spec;
  spec[0] = quo(Rational(1), {{Rational(1), 1}});
  std::map<long, QSeries> out = eta_slash_S(1, spec, Rational(4));
  QSeries expected =
      eta_quotient({{Rational(1), 1}}, Rational(4)).scaled(Coeff(sqrt_rational_cyclo(rational(1, 2))));
  CHECK(series_agree(out.at(0), expected));
  CHECK(series_agree(out.at(1), expected));
}

TEST_CASE("the level-2 eta pair slashes to the frozen expansion") {
  std::map<long, EtaQuotientSpec> spec;
  spec[0] = pair_spec0();
  spec[1] = pair_spec1();
  std::map<long, QSeries> out = eta_slash_S(1, spec, Rational(6));
  CHECK(series_agree(out.at(0), from_table(kHat10C0, Rational(6))));
  CHECK(series_agree(out.at(1), from_table(kHat10C1, Rational(6))));
  for (long r = 0; r < 2; ++r)
    for (const auto& [k, c] : out.at(r).terms()) {
      (void)k;
      CHECK(coeff_is_rational(c));
    }
}

TEST_CASE("the slash does not depend on the choice of bottom-row completion") {
  std::map<long, EtaQuotientSpec> spec;
  spec[0] = pair_spec0();
  spec[1] = pair_spec1();
  // (3, 2) = (1, 0) mod 2, reached through a different unimodular completion
  std::map<long, QSeries> alt = eta_slash(1, spec, SL2{2, 1, 3, 2}, Rational(6));
  CHECK(series_agree(alt.at(0), from_table(kHat10C0, Rational(6))));
  CHECK(series_agree(alt.at(1), from_table(kHat10C1, Rational(6))));

  std::map<long, QSeries> a = eta_slash(1, spec, SL2{0, -1, 1, 1}, Rational(6));
  std::map<long, QSeries> b = eta_slash(1, spec, SL2{-1, -2, 1, 1}, Rational(6));
  CHECK(series_agree(a.at(0), b.at(0)));
  CHECK(series_agree(a.at(1), b.at(1)));
}

TEST_CASE("translating the completion twists the slash by the transform phases") {
  std::map<long, EtaQuotientSpec> spec;
  spec[0] = pair_spec0();
  spec[1] = pair_spec1();
  std::map<long, QSeries> at10 = eta_slash_S(1, spec, Rational(6));
  std::map<long, QSeries> at11 = eta_slash(1, spec, SL2{0, -1, 1, 1}, Rational(6));
  WeilRep W(1, 1);
  for (long r = 0; r < 2; ++r) {
    // right-translating by T sends f to rho(T)^{-1} f(tau + 1)
    QSeries s = at10.at(r).compacted();
    QSeries shifted = rescale(s, Rational(1), CyclotomicElement::root_of_unity(s.denom_lattice(), 1));
    shifted = shifted.scaled(Coeff(W.rho_t_diag()[static_cast<size_t>(r)].pow(-1)));
    CHECK(series_agree(at11.at(r), shifted));
  }
}

TEST_CASE("theta component vectors are fixed points of the slash") {
  std::map<long, EtaQuotientSpec> t1;
  t1[0] = theta1_spec0();
  t1[1] = theta1_spec1();
  CHECK(series_agree(eq_series(t1[0], Rational(9)), theta_nullwert(1, 0, Rational(9))));
  CHECK(series_agree(eq_series(t1[1], Rational(9)), theta_nullwert(1, 1, Rational(9))));
  std::map<long, QSeries> out1 = eta_slash_S(1, t1, Rational(9));
  for (long r = 0; r < 2; ++r) CHECK(series_agree(out1.at(r), theta_nullwert(1, r, Rational(9))));

  // index 2: all four components have classical eta-quotient models
  std::map<long, EtaQuotientSpec> t2;
  t2[0] = quo(Rational(1), {{Rational(4), 5}, {Rational(2), -2}, {Rational(8), -2}});
  t2[1] = quo(Rational(1), {{Rational(2), 2}, {Rational(1), -1}});
  t2[2] = quo(Rational(2), {{Rational(8), 2}, {Rational(4), -1}});
  t2[3] = t2[1];
  for (long r = 0; r < 4; ++r)
    CHECK(series_agree(eq_series(t2.at(r), Rational(8)), theta_nullwert(2, r, Rational(8))));
  std::map<long, QSeries> out2 = eta_slash_S(2, t2, Rational(8));
  for (long r = 0; r < 4; ++r) CHECK(series_agree(out2.at(r), theta_nullwert(2, r, Rational(8))));

  // a completion with c = 2 exercises the Hermite step with D > 1
  std::map<long, QSeries> out3 = eta_slash(2, t2, SL2{1, 1, 2, 3}, Rational(6));
  for (long r = 0; r < 4; ++r) CHECK(series_agree(out3.at(r), theta_nullwert(2, r, Rational(6))));
}

TEST_CASE("the S slash matches the transformation law numerically at 1.3i") {
  std::map<long, EtaQuotientSpec> t1;
  t1[0] = theta1_spec0();
  t1[1] = theta1_spec1();
  std::map<long, QSeries> out = eta_slash_S(1, t1, Rational(40));

  const long digits = 32;
  BigFloatComplex tau = BigFloatComplex::make(Rational(0), rational(13, 10), digits);
  BigFloatComplex stau = BigFloatComplex::make(Rational(0), rational(10, 13), digits);
  BigFloat sq = BigFloat::from_rational(rational(13, 20), BigFloatComplex::bits_for(digits)).sqrt();
  BigFloatComplex sqrt_tau{sq, sq, digits};  // principal sqrt of 1.3i

  BigFloatComplex th0 = evaluate(theta_nullwert(1, 0, Rational(40)), stau, 30);
  BigFloatComplex th1 = evaluate(theta_nullwert(1, 1, Rational(40)), stau, 30);
  // rho(S)^{-1} = e(1/8)/sqrt(2) [[1, 1], [1, -1]]
  CyclotomicElement z = CyclotomicElement::root_of_unity(8, 1) * sqrt_rational_cyclo(rational(1, 2));
  BigFloatComplex zn = coeff_numeric(Coeff(z), digits);

  BigFloat tol = BigFloat::from_rational(rational(Integer(1), pow_integer(Integer(10), 28)),
                                         BigFloatComplex::bits_for(digits));
  BigFloatComplex lhs0 = evaluate(out.at(0), tau, 30);
  BigFloatComplex rhs0 = zn * (th0 + th1) / sqrt_tau;
  CHECK(((lhs0 - rhs0).abs() - tol).is_negative());
  BigFloatComplex lhs1 = evaluate(out.at(1), tau, 30);
  BigFloatComplex rhs1 = zn * (th0 - th1) / sqrt_tau;
  CHECK(((lhs1 - rhs1).abs() - tol).is_negative());
}

TEST_CASE("repackaging the level-2 eta pair reproduces the frozen rows") {
  FormFamily fam = pair_family(Rational(6));
  std::map<long, EtaMemberSpec> slots;
  slots[1].components[0] = pair_spec0();
  slots[1].components[1] = pair_spec1();
  EtaSlashEngine engine(1, 2, std::move(slots));
  CheckForm cf = repackage_full(fam, engine);
  CHECK(cf.index() == 1);
  CHECK(cf.level() == 2);

  const VectorValuedForm& f1 = fam.member(1);
  const VectorValuedForm& f2 = fam.member(2);
  for (long r = 0; r < 2; ++r) {
    // row 0 is the averaged transform of the members themselves
    QSeries sum = f1.component(r).scaled(rational(1, 2)) + f2.component(r).scaled(rational(1, 2));
    QSeries dif = f2.component(r).scaled(rational(1, 2)) - f1.component(r).scaled(rational(1, 2));
    CHECK(series_agree(cf.component(0, 0, r), sum));
    CHECK(series_agree(cf.component(0, 1, r), dif));
    // the engine row splits the slashed series by exponent class
    QSeries theta8 = theta_nullwert(1, r, Rational(6)).scaled(Rational(8));
    CHECK(series_agree(cf.component(1, 0, r), dif + theta8));
  }
  check_spots(cf.component(1, 0, 0), kCheck10C0);
  check_spots(cf.component(1, 0, 1), kCheck10C1);
  check_spots(cf.component(1, 1, 0), kCheck11C0);
  check_spots(cf.component(1, 1, 1), kCheck11C1);

  // the standalone row-0 transform agrees
  std::map<std::pair<long, long>, QSeries> row0 = check_row0(fam);
  for (long j = 0; j < 2; ++j)
    for (long r = 0; r < 2; ++r) CHECK(series_agree(row0.at({j, r}), cf.component(0, j, r)));

  // the inverse transform recovers the slashed rows and the members exactly
  std::map<long, EtaQuotientSpec> spec;
  spec[0] = pair_spec0();
  spec[1] = pair_spec1();
  std::map<long, QSeries> hat10 = eta_slash_S(1, spec, Rational(6));
  std::map<long, QSeries> hat11 = eta_slash(1, spec, SL2{0, -1, 1, 1}, Rational(6));
  ComponentTable hat = inverse_repackage(cf);
  for (long r = 0; r < 2; ++r) {
    CHECK(series_agree(hat.at({0, 0}).at(r), f2.component(r)));
    CHECK(series_agree(hat.at({0, 1}).at(r), f1.component(r)));
    CHECK(series_agree(hat.at({1, 0}).at(r), hat10.at(r)));
    CHECK(series_agree(hat.at({1, 1}).at(r), hat11.at(r)));
    // half of the frozen slashed row splits into the two repackaged columns
    CHECK(series_agree(cf.component(1, 0, r),
                       hat10.at(r).scaled(rational(1, 2)) + hat11.at(r).scaled(rational(1, 2))));
    CHECK(series_agree(cf.component(1, 1, r),
                       hat10.at(r).scaled(rational(1, 2)) - hat11.at(r).scaled(rational(1, 2))));
  }
}

TEST_CASE("a pure theta family repackages to the four closed rows") {
  std::map<long, VectorValuedForm> mem;
  mem.emplace(1, theta_member(1, Rational(-8), Rational(6), 2));
  mem.emplace(2, theta_member(1, Rational(248), Rational(6), 1));
  FormFamily fam(2, std::move(mem));

  // two interchangeable engines: a theta correction alone, or its eta model
  std::map<long, EtaMemberSpec> s1;
  s1[1].theta = Rational(-8);
  EtaSlashEngine e1(1, 2, std::move(s1));
  std::map<long, EtaMemberSpec> s2;
  s2[1].components[0] = quo(Rational(-8), theta1_spec0().factors);
  s2[1].components[1] = quo(Rational(-16), {{Rational(4), 2}, {Rational(2), -1}});
  EtaSlashEngine e2(1, 2, std::move(s2));

  CheckForm c1 = repackage_full(fam, e1);
  CheckForm c2 = repackage_full(fam, e2);
  for (long r = 0; r < 2; ++r) {
    QSeries th = theta_nullwert(1, r, Rational(6));
    CHECK(series_agree(c1.component(0, 0, r), th.scaled(Rational(120))));
    CHECK(series_agree(c1.component(0, 1, r), th.scaled(Rational(128))));
    CHECK(series_agree(c1.component(1, 0, r), th.scaled(Rational(-8))));
    CHECK(c1.component(1, 1, r).is_zero_series());
    for (long i = 0; i < 2; ++i)
      for (long j = 0; j < 2; ++j)
        CHECK(series_agree(c1.component(i, j, r), c2.component(i, j, r)));
  }

  // level 3: the engine rows collapse to the slot-1 member on j = 0 alone
  std::map<long, VectorValuedForm> mem3;
  mem3.emplace(1, theta_member(1, Rational(-8), Rational(5), 3));
  mem3.emplace(3, theta_member(1, Rational(248), Rational(5), 1));
  FormFamily fam3(3, std::move(mem3));
  std::map<long, EtaMemberSpec> s3;
  s3[1].theta = Rational(-8);
  EtaSlashEngine e3(1, 3, std::move(s3));
  CheckForm c3 = repackage_full(fam3, e3);
  for (long r = 0; r < 2; ++r) {
    QSeries th = theta_nullwert(1, r, Rational(5));
    CHECK(series_agree(c3.component(0, 0, r), th.scaled(rational(232, 3))));
    CHECK(series_agree(c3.component(0, 1, r), th.scaled(rational(256, 3))));
    CHECK(series_agree(c3.component(0, 2, r), th.scaled(rational(256, 3))));
    for (long i = 1; i < 3; ++i) {
      CHECK(series_agree(c3.component(i, 0, r), th.scaled(Rational(-8))));
      CHECK(c3.component(i, 1, r).is_zero_series());
      CHECK(c3.component(i, 2, r).is_zero_series());
    }
  }
}

TEST_CASE("a traced family rides through the engine with its theta correction") {
  FormFamily base = pair_family(Rational(6));
  std::map<long, VectorValuedForm> mem;
  for (long n : {1L, 2L}) {
    std::map<long, QSeries> comps;
    for (long r = 0; r < 2; ++r)
      comps[r] = base.member(n).component(r).scaled(Rational(2)) +
                 theta_nullwert(1, r, Rational(6)).scaled(Rational(-8));
    mem.emplace(n, VectorValuedForm(1, comps, 2 / n));
  }
  FormFamily fam(2, std::move(mem));

  std::map<long, EtaMemberSpec> slots;
  slots[1].components[0] = quo(Rational(256), pair_spec0().factors);
  slots[1].components[1] = quo(Rational(2), pair_spec1().factors);
  slots[1].theta = Rational(-8);
  EtaSlashEngine engine(1, 2, std::move(slots));
  CheckForm cf = repackage_full(fam, engine);

  check_spots(cf.component(1, 0, 0), kTracedCheck10C0);
  check_spots(cf.component(1, 0, 1), kTracedCheck10C1);
  ComponentTable hat = inverse_repackage(cf);
  for (long r = 0; r < 2; ++r) {
    CHECK(series_agree(hat.at({1, 0}).at(r),
                       from_table(r == 0 ? kTracedHat10C0 : kTracedHat10C1, Rational(6))));
    CHECK(series_agree(hat.at({1, 0}).at(r), engine.slash(1, gamma0_for(1, 0, 2), Rational(6)).at(r)));
    QSeries rhs = fam.member(2).component(r).scaled(rational(1, 2)) -
                  fam.member(1).component(r).scaled(rational(1, 2)) +
                  theta_nullwert(1, r, Rational(6)).scaled(Rational(8));
    CHECK(series_agree(cf.component(1, 0, r), rhs));
  }
}

TEST_CASE("level-1 repackaging returns the single member unchanged") {
  std::map<long, VectorValuedForm> mem;
  mem.emplace(1, theta_member(1, Rational(3), Rational(5), 1));
  FormFamily fam(1, std::move(mem));
  EtaSlashEngine engine(1, 1, {});
  CheckForm cf = repackage_full(fam, engine);
  for (long r = 0; r < 2; ++r)
    CHECK(series_agree(cf.component(0, 0, r), theta_nullwert(1, r, Rational(5)).scaled(Rational(3))));
  ComponentTable hat = inverse_repackage(cf);
  for (long r = 0; r < 2; ++r)
    CHECK(series_agree(hat.at({0, 0}).at(r), cf.component(0, 0, r)));
}

TEST_CASE("row 0 matches the Ramanujan-sum route and inverts to the members") {
  std::mt19937 rng(20260815);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (long N = 1; N <= 6; ++N) {
    for (int trial = 0; trial < 3; ++trial) {
      std::map<long, VectorValuedForm> mem;
      for (long n = 1; n <= N; ++n) {
        if (N % n != 0) continue;
        std::map<long, QSeries> comps;
        for (long r = 0; r < 2; ++r) {
          QSeries s;
          for (long k = 0; k < 5; ++k) {
            long c = coef(rng);
            if (c != 0) s.set_term(Rational(k) + rational(r, 4), Rational(c));
          }
          s.set_truncation_raw(Rational(5));
          comps[r] = s;
        }
        mem.emplace(n, VectorValuedForm(1, comps, N / n));
      }
      FormFamily fam(N, std::move(mem));
      std::map<std::pair<long, long>, QSeries> rows = check_row0(fam);

      std::map<CheckForm::Label, QSeries> labeled;
      for (long j = 0; j < N; ++j)
        for (long r = 0; r < 2; ++r) {
          const QSeries& s = rows.at({j, r});
          for (const auto& [k, c] : s.terms()) {
            (void)k;
            CHECK(coeff_is_rational(c));
          }
          // Ramanujan-sum route: (1/N) sum_{n | N} c_{N/n}(j) member(n)
          QSeries alt;
          for (long n = 1; n <= N; ++n) {
            if (N % n != 0) continue;
            Rational w = ramanujan_c(N / n, j) / N;
            if (w != 0) alt += fam.member(n).component(r).scaled(w);
          }
          if (!alt.truncation().has_value()) alt.set_truncation_raw(Rational(5));
          CHECK(series_agree(s, alt));
          labeled.emplace(CheckForm::Label{0, j, r}, s);
        }

      CheckForm cf(1, N, std::move(labeled));  // construction re-validates the rows
      ComponentTable hat = inverse_repackage(cf);
      for (long j = 0; j < N; ++j) {
        long n = std::gcd(j, N);
        if (n == 0) n = N;
        for (long r = 0; r < 2; ++r)
          CHECK(series_agree(hat.at({0, j}).at(r), fam.member(n).component(r)));
      }

      // Parseval: N sum_j |row_j|^2 = sum_{j'} |member(gcd(j', N))|^2 per exponent
      for (long r = 0; r < 2; ++r) {
        std::map<Rational, Rational> lhs, rhs;
        for (long j = 0; j < N; ++j)
          for (const auto& [k, c] : rows.at({j, r}).terms()) {
            Rational v = coeff_to_rational(c);
            lhs[rows.at({j, r}).exponent_of(k)] += Rational(N) * v * v;
          }
        for (long j = 0; j < N; ++j) {
          long n = std::gcd(j, N);
          if (n == 0) n = N;
          const QSeries& s = fam.member(n).component(r);
          for (const auto& [k, c] : s.terms()) {
            Rational v = coeff_to_rational(c);
            rhs[s.exponent_of(k)] += v * v;
          }
        }
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("the inverse transform and the averaged transform are mutually inverse") {
  std::mt19937 rng(20260815);
  std::uniform_int_distribution<long> coef(-5, 5);
  for (long m : {1L, 2L}) {
    for (long N : {2L, 3L, 4L}) {
      std::map<CheckForm::Label, QSeries> comps;
      for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j)
          for (long r = 0; r < 2 * m; ++r) {
            CheckForm::Label key{i, j, r};
            CheckForm::Label mir{(N - i) % N, (N - j) % N, (2 * m - r) % (2 * m)};
            if (mir < key) continue;  // filled from its mirror below
            QSeries s;
            Rational base = rational(r * r, 4 * m) + rational(i * j, N);
            base = base - Rational(rational_floor(base));
            for (long k = 0; k < 4; ++k) {
              CyclotomicElement z(Rational(coef(rng)));
              z += CyclotomicElement::root_of_unity(N, 1) * CyclotomicElement(Rational(coef(rng)));
              if (!z.is_zero()) s.set_term(base + k, Coeff(z));
            }
            s.set_truncation_raw(Rational(4));
            comps[key] = s;
            if (mir != key) comps[mir] = s;
          }
      CheckForm cf(m, N, std::move(comps));
      ComponentTable hat = inverse_repackage(cf);
      for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j)
          for (long r = 0; r < 2 * m; ++r) {
            QSeries acc;
            for (long jp = 0; jp < N; ++jp) {
              CyclotomicElement z = CyclotomicElement::root_of_unity(N, -j * jp);
              z *= rational(1, N);
              acc += hat.at({i, jp}).at(r).scaled(Coeff(z));
            }
            CHECK(series_agree(acc, cf.component(i, j, r)));
          }
    }
  }
}

TEST_CASE("slash and engine inputs are validated") {
  std::map<long, EtaQuotientSpec> bad;
  bad[0] = quo(Rational(1), {{Rational(1), 2}});  // eta^2 has weight 1
  CHECK(message_of([&] { eta_slash_S(1, bad, Rational(4)); }).find("weight") != std::string::npos);

  std::map<long, EtaQuotientSpec> neg;
  neg[0] = quo(Rational(1), {{Rational(-1), 1}});
  CHECK(message_of([&] { eta_slash_S(1, neg, Rational(4)); }).find("scale") != std::string::npos);

  std::map<long, EtaQuotientSpec> ok;
  ok[0] = quo(Rational(1), {{Rational(1), 1}});
  CHECK(message_of([&] { eta_slash(1, ok, SL2{2, 0, 0, 2}, Rational(4)); }).find("determinant") !=
        std::string::npos);
  CHECK(message_of([&] { eta_slash(1, ok, SL2{1, 1, 0, 1}, Rational(4)); }).find("lower-left") !=
        std::string::npos);
  CHECK(message_of([&] { eta_slash(0, ok, SL2{0, -1, 1, 0}, Rational(4)); }).find("index") !=
        std::string::npos);

  std::map<long, EtaQuotientSpec> dup;
  dup[0] = quo(Rational(1), {{Rational(1), 1}});
  dup[2] = quo(Rational(1), {{Rational(2), 1}});
  CHECK(message_of([&] { eta_slash_S(1, dup, Rational(4)); }).find("duplicate") != std::string::npos);

  std::map<long, EtaMemberSpec> slot3;
  slot3[3].theta = Rational(1);
  CHECK(message_of([&] { EtaSlashEngine(1, 2, std::move(slot3)); }).find("divide") !=
        std::string::npos);

  EtaSlashEngine engine(1, 2, {});
  CHECK(message_of([&] { engine.member_spec(1); }).find("coverage gap") != std::string::npos);
}

TEST_CASE("family and repackaging inputs are validated") {
  auto th = [](long scale, long level) { return theta_member(1, Rational(scale), Rational(5), level); };

  std::map<long, VectorValuedForm> missing;
  missing.emplace(1, th(1, 4));
  missing.emplace(4, th(1, 1));
  CHECK(message_of([&] { FormFamily(4, std::move(missing)); }).find("missing member") !=
        std::string::npos);

  std::map<long, VectorValuedForm> wrong;
  wrong.emplace(1, th(1, 1));  // declared level 1, expected 2
  wrong.emplace(2, th(1, 1));
  CHECK(message_of([&] { FormFamily(2, std::move(wrong)); }).find("declares level") !=
        std::string::npos);

  std::map<long, VectorValuedForm> mixed;
  mixed.emplace(1, th(1, 2));
  mixed.emplace(2, theta_member(2, Rational(1), Rational(5), 1));
  CHECK(message_of([&] { FormFamily(2, std::move(mixed)); }).find("index mismatch") !=
        std::string::npos);

  // no truncation anywhere: exact member components cannot fix a window
  std::map<long, QSeries> exact;
  exact[0] = QSeries::monomial(Rational(1), Rational(1));
  exact[1] = QSeries::monomial(Rational(1), rational(1, 4));
  std::map<long, VectorValuedForm> mem;
  mem.emplace(1, VectorValuedForm(1, exact, 2));
  mem.emplace(2, VectorValuedForm(1, exact, 1));
  FormFamily fam(2, std::move(mem));
  std::map<long, EtaMemberSpec> s1;
  s1[1].theta = Rational(1);
  EtaSlashEngine e1(1, 2, std::move(s1));
  CHECK(message_of([&] { repackage_full(fam, e1); }).find("truncation") != std::string::npos);

  // engine gap: the (1, j) rows need slot 1
  std::map<long, VectorValuedForm> mem2;
  mem2.emplace(1, theta_member(1, Rational(2), Rational(5), 2));
  mem2.emplace(2, theta_member(1, Rational(2), Rational(5), 1));
  FormFamily fam2(2, std::move(mem2));
  EtaSlashEngine gap(1, 2, {});
  CHECK(message_of([&] { repackage_full(fam2, gap); }).find("coverage gap") != std::string::npos);

  EtaSlashEngine other(1, 3, {});
  CHECK(message_of([&] { repackage_full(fam2, other); }).find("do not match") != std::string::npos);

  // expansion disagreement: the engine claims 3 theta but the member carries 2
  std::map<long, EtaMemberSpec> s3;
  s3[1].theta = Rational(3);
  EtaSlashEngine e3(1, 2, std::move(s3));
  CHECK(message_of([&] { repackage_full(fam2, e3); }).find("engine expansion") != std::string::npos);
}

TEST_CASE("repackaged-form construction validates support and symmetry") {
  QSeries good = QSeries::monomial(Rational(1), Rational(1)).with_truncation(Rational(3));

  std::map<CheckForm::Label, QSeries> offgrid;
  offgrid[{0, 0, 0}] = QSeries::monomial(Rational(1), rational(1, 3)).with_truncation(Rational(3));
  CHECK(message_of([&] { CheckForm(1, 2, std::move(offgrid)); }).find("supported at") !=
        std::string::npos);

  std::map<CheckForm::Label, QSeries> lopsided;
  lopsided[{0, 1, 0}] = good;
  lopsided[{0, 2, 0}] = good.scaled(Rational(2));
  CHECK(message_of([&] { CheckForm(1, 3, std::move(lopsided)); }).find("symmetry") !=
        std::string::npos);

  std::map<CheckForm::Label, QSeries> field;
  QSeries zc;
  zc.set_term(Rational(1), Coeff(CyclotomicElement::root_of_unity(3, 1)));
  zc.set_truncation_raw(Rational(3));
  field[{0, 0, 0}] = zc;
  CHECK(message_of([&] { CheckForm(1, 2, std::move(field)); }).find("order") != std::string::npos);

  std::map<CheckForm::Label, QSeries> twice;
  twice[{0, 0, 0}] = good;
  twice[{0, 2, 0}] = good;  // reduces to (0, 0, 0) at level 2
  CHECK(message_of([&] { CheckForm(1, 2, std::move(twice)); }).find("duplicate") !=
        std::string::npos);

  // indices reduce into range on access
  std::map<CheckForm::Label, QSeries> one;
  one[{0, 1, 1}] = QSeries::monomial(Rational(1), rational(1, 4)).with_truncation(Rational(3));
  one[{0, 1, 0}] = good;
  one[{0, 0, 0}] = good.scaled(Rational(5));
  CheckForm cf(1, 2, std::move(one));
  CHECK(series_agree(cf.component(0, -1, 3), cf.component(0, 1, 1)));
  CHECK(series_agree(cf.component(0, 3, -2), cf.component(0, 1, 0)));
  CHECK(cf.component(1, 0, 0).is_zero_series());
}
