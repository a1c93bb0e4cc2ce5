#include "emf/repth.hpp"

#include <algorithm>
#include <sstream>

#include "emf/error.hpp"

namespace emf {

namespace {

std::vector<long> divisors_of(long n) {
  std::vector<long> out;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long moebius_of(long n) {
  long res = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      res = -res;
    }
  }
  if (n > 1) res = -res;
  return res;
}

long euler_phi(long n) {
  long res = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      res -= res / p;
    }
  }
  if (n > 1) res -= res / n;
  return res;
}

bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long mod_nonneg(long k, long n) {
  long r = k % n;
  return r < 0 ? r + n : r;
}

}  // namespace

VirtualModuleTraces::VirtualModuleTraces(long order, std::map<long, long> traces,
                                         bool virtual_module)
    : order_(order), virtual_(virtual_module), traces_(std::move(traces)) {
  EMF_REQUIRE(order_ >= 1, ValueError, "traces: order must be positive, got " << order_);
  for (const auto& [d, t] : traces_) {
    (void)t;
    EMF_REQUIRE(d >= 1 && order_ % d == 0, ValueError,
                "traces: key " << d << " is not a divisor of the order " << order_);
  }
  for (long d : divisors_of(order_))
    EMF_REQUIRE(traces_.count(d), ValueError,
                "traces: missing divisor " << d << " of the order " << order_);
  // fail fast on data that is not character data: each v_b must be integral
  for (long b : divisors_of(order_)) {
    long s = 0;
    for (long d : divisors_of(b)) s += moebius_of(b / d) * traces_.at(d);
    EMF_REQUIRE(s % b == 0, ValueError,
                "invalid character data: v_" << b << " = " << s << "/" << b
                                             << " is not an integer");
  }
}

long VirtualModuleTraces::trace(long k) const {
  long g = gcd_long(mod_nonneg(k, order_), order_);
  return traces_.at(g == 0 ? order_ : g);
}

VirtualModuleTraces VirtualModuleTraces::power(long k) const {
  long e = gcd_long(mod_nonneg(k, order_), order_);
  if (e == 0) e = order_;
  long newOrder = order_ / e;
  std::map<long, long> t;
  for (long d : divisors_of(newOrder)) t[d] = trace(e * d);
  return VirtualModuleTraces(newOrder, std::move(t), virtual_);
}

FrameShape::FrameShape(std::map<long, long> vb) : vb_(std::move(vb)) {
  for (auto it = vb_.begin(); it != vb_.end();) {
    EMF_REQUIRE(it->first >= 1, ValueError,
                "frame shape: cycle length " << it->first << " must be positive");
    it = it->second == 0 ? vb_.erase(it) : std::next(it);
  }
}

long FrameShape::v(long b) const {
  auto it = vb_.find(b);
  return it == vb_.end() ? 0 : it->second;
}

long FrameShape::degree() const {
  long s = 0;
  for (const auto& [b, v] : vb_) s += b * v;
  return s;
}

std::string FrameShape::to_string() const {
  if (vb_.empty()) return "1^0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, v] : vb_) {
    if (!first) os << ' ';
    os << b << '^' << v;
    first = false;
  }
  return os.str();
}

FrameShape vb_from_traces(const VirtualModuleTraces& T) {
  std::map<long, long> vb;
  for (long b : divisors_of(T.order())) {
    long s = 0;
    for (long d : divisors_of(b)) s += moebius_of(b / d) * T.trace(d);
    EMF_REQUIRE(s % b == 0, ValueError,
                "invalid character data: v_" << b << " not integral");
    vb[b] = s / b;
  }
  // Moebius inversion must invert: sum_{b|d} b*v_b = tr(g^d)
  for (long d : divisors_of(T.order())) {
    long s = 0;
    for (long b : divisors_of(d)) s += b * vb[b];
    EMF_REQUIRE(s == T.trace(d), CheckError,
                "frame shape does not resum to the trace at d = " << d);
  }
  return FrameShape(std::move(vb));
}

std::map<long, long> ud_from_traces(const VirtualModuleTraces& T) {
  const long n = T.order();
  std::map<long, long> ud;
  for (long d : divisors_of(n)) {
    // u_d = (1/n) sum_{k mod n} tr(g^k) e(-k(n/d)/n): e(j(n/d)/n) is a
    // primitive d-th root of unity exactly when gcd(j, d) = 1
    CyclotomicElement acc = CyclotomicElement::zero_of_order(n);
    for (long k = 0; k < n; ++k)
      acc += Rational(T.trace(k)) *
             CyclotomicElement::root_of_unity(n, mod_nonneg(-k * (n / d), n));
    acc *= rational(1, n);
    EMF_REQUIRE(acc.is_rational(), CheckError,
                "multiplicity u_" << d << " is not rational");
    Rational r = acc.to_rational();
    EMF_REQUIRE(is_integer(r), CheckError, "multiplicity u_" << d << " = "
                                               << rational_to_string(r)
                                               << " is not an integer");
    ud[d] = to_long(num(r));
  }
  if (!T.virtual_module())
    for (const auto& [d, u] : ud)
      EMF_REQUIRE(u >= 0, ValueError,
                  "module declared genuine but u_" << d << " = " << u << " < 0");
  FrameShape fs = vb_from_traces(T);
  for (long b : divisors_of(n)) {
    long s = 0;
    for (long a = 1; a * b <= n; ++a)
      if (n % (a * b) == 0) s += moebius_of(a) * ud.at(a * b);
    EMF_REQUIRE(s == fs.v(b), CheckError,
                "u/v cross-check failed at b = " << b << ": " << s << " vs "
                                                 << fs.v(b));
  }
  return ud;
}

VirtualModuleTraces adams_traces(const VirtualModuleTraces& T, long k) {
  EMF_REQUIRE(k >= 1, ValueError, "adams_traces: k must be positive, got " << k);
  std::map<long, long> t;
  for (long d : divisors_of(T.order())) t[d] = T.trace(mod_nonneg(k, T.order()) * d);
  return VirtualModuleTraces(T.order(), std::move(t), true);
}

QSeries lambda_trace(const VirtualModuleTraces& T, int sign, long t_prec) {
  EMF_REQUIRE(sign == 1 || sign == -1, ValueError,
              "lambda_trace: sign must be +1 or -1, got " << sign);
  EMF_REQUIRE(t_prec >= 1, ValueError,
              "lambda_trace: need positive precision, got " << t_prec);
  const Rational P(t_prec);

  FrameShape fs = vb_from_traces(T);
  QSeries prod = QSeries::constant(Rational(1)).with_truncation(P);
  for (const auto& [b, v] : fs.table()) {
    QSeries factor =
        QSeries::constant(Rational(1)) - QSeries::monomial(Rational(1), Rational(b));
    prod = series_mul(prod, series_pow(factor.with_truncation(P), Integer(sign * v)));
  }

  QSeries logForm;
  for (long k = 1; k < t_prec; ++k)
    logForm.set_term(Rational(k), Coeff(rational(-sign * T.trace(k), k)));
  logForm.set_truncation_raw(P);
  QSeries expForm = series_exp(logForm);

  require_series_agree(prod, expForm, "lambda trace closed forms");
  return prod;
}

PowerMapReport power_map_check(const VirtualModuleTraces& T, long p) {
  EMF_REQUIRE(is_prime_long(p), ValueError, "power_map_check: p = " << p
                                                                    << " is not prime");
  EMF_REQUIRE(T.order() % p == 0, ValueError,
              "power_map_check: p = " << p << " does not divide the order "
                                      << T.order());
  PowerMapReport rep;
  rep.order = T.order();
  rep.p = p;

  FrameShape vg = vb_from_traces(T);
  FrameShape vgp = vb_from_traces(T.power(p));
  {
    std::ostringstream what;
    what << "v_b(g^" << p << ") over " << divisors_of(T.order()).size()
         << " divisors";
    bool any = false;
    for (long b : divisors_of(T.order())) {
      long want = p * vg.v(b * p) + (b % p != 0 ? vg.v(b) : 0);
      if (vgp.v(b) != want) {
        std::ostringstream os;
        os << "v_" << b << "(g^" << p << ") = " << vgp.v(b) << ", expected "
           << want;
        rep.failures.push_back(os.str());
        any = true;
      }
    }
    if (!any) rep.checked.push_back(what.str());
  }

  long pPart = 0;
  for (long m = T.order(); m % p == 0; m /= p) ++pPart;
  for (long k = 1, pk = p; k <= pPart + 1; ++k, pk *= p) {
    FrameShape vk = vb_from_traces(T.power(pk));
    bool any = false;
    for (long b : divisors_of(T.order())) {
      long want = 0;
      if (b % p == 0) {
        want = pk * vg.v(b * pk);
      } else {
        long pj = 1;
        for (long j = 0; j <= k; ++j, pj *= p) want += pj * vg.v(b * pj);
      }
      if (vk.v(b) != want) {
        std::ostringstream os;
        os << "closed form: v_" << b << "(g^" << pk << ") = " << vk.v(b)
           << ", expected " << want;
        rep.failures.push_back(os.str());
        any = true;
      }
    }
    if (!any) {
      std::ostringstream what;
      what << "closed form at p^" << k;
      rep.checked.push_back(what.str());
    }
  }

  rep.ok = rep.failures.empty();
  return rep;
}

std::pair<Rational, long> weight_identity(const VirtualModuleTraces& T, long N) {
  EMF_REQUIRE(N >= 1, ValueError, "weight_identity: N must be positive, got " << N);
  long sum = 0;
  for (long d : divisors_of(N)) sum += euler_phi(N / d) * T.trace(d);
  Rational lhs = rational(sum, N);
  FrameShape fs = vb_from_traces(T);
  long rhs = 0;
  for (long d : divisors_of(N)) rhs += fs.v(d);
  EMF_REQUIRE(lhs == Rational(rhs), CheckError,
              "weight identity failed at N = " << N << ": "
                                               << rational_to_string(lhs) << " vs "
                                               << rhs);
  return {lhs, rhs};
}

CharacterTable::CharacterTable(std::vector<ConjugacyClass> classes,
                               std::vector<std::string> irreducibleNames,
                               std::vector<std::vector<CyclotomicElement>> values)
    : classes_(std::move(classes)),
      irrNames_(std::move(irreducibleNames)),
      values_(std::move(values)) {
  EMF_REQUIRE(!classes_.empty(), ValueError, "character table: no classes");
  EMF_REQUIRE(values_.size() == irrNames_.size(), ValueError,
              "character table: " << irrNames_.size() << " irreducible names but "
                                  << values_.size() << " value rows");
  for (const auto& row : values_)
    EMF_REQUIRE(row.size() == classes_.size(), ValueError,
                "character table: value row has " << row.size() << " entries for "
                                                  << classes_.size() << " classes");

  for (const auto& c : classes_) {
    EMF_REQUIRE(c.size >= 1, ValueError,
                "character table: class " << c.name << " has size " << c.size);
    EMF_REQUIRE(c.order >= 1, ValueError,
                "character table: class " << c.name << " has order " << c.order);
    groupOrder_ += c.size;
    for (const auto& other : classes_)
      EMF_REQUIRE(&c == &other || c.name != other.name, ValueError,
                  "character table: duplicate class name " << c.name);
    if (c.order == 1) {
      EMF_REQUIRE(identityClass_.empty(), ValueError,
                  "character table: two classes of order 1");
      EMF_REQUIRE(c.size == 1, ValueError,
                  "character table: identity class has size " << c.size);
      identityClass_ = c.name;
    }
  }
  EMF_REQUIRE(!identityClass_.empty(), ValueError,
              "character table: no identity class");
  for (size_t i = 0; i < irrNames_.size(); ++i)
    for (size_t j = i + 1; j < irrNames_.size(); ++j)
      EMF_REQUIRE(irrNames_[i] != irrNames_[j], ValueError,
                  "character table: duplicate irreducible name " << irrNames_[i]);

  for (const auto& c : classes_) {
    for (long p = 2; p <= c.order; ++p)
      if (is_prime_long(p) && c.order % p == 0)
        EMF_REQUIRE(c.powers.count(p), ValueError,
                    "character table: class " << c.name << " of order " << c.order
                                              << " lacks the power map at " << p);
    for (const auto& [p, target] : c.powers) {
      EMF_REQUIRE(is_prime_long(p), ValueError,
                  "character table: power-map key " << p << " on class " << c.name
                                                    << " is not prime");
      size_t t = class_index(target);
      long want = c.order / gcd_long(c.order, p);
      EMF_REQUIRE(classes_[t].order == want, ValueError,
                  "character table: g^" << p << " of class " << c.name
                                        << " should have order " << want << ", but "
                                        << target << " has order "
                                        << classes_[t].order);
    }
  }

  // row orthogonality: sum_c |c| chi(c) conj(psi(c)) = |G| delta
  for (size_t i = 0; i < values_.size(); ++i) {
    for (size_t j = i; j < values_.size(); ++j) {
      CyclotomicElement acc{Rational(0)};
      for (size_t c = 0; c < classes_.size(); ++c)
        acc += Rational(classes_[c].size) * values_[i][c] * values_[j][c].conj();
      CyclotomicElement want{i == j ? Rational(groupOrder_) : Rational(0)};
      EMF_REQUIRE(acc == want, ValueError,
                  "character table: rows " << irrNames_[i] << " and " << irrNames_[j]
                                           << " are not orthogonal");
    }
  }
}

size_t CharacterTable::class_index(const std::string& name) const {
  for (size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i].name == name) return i;
  EMF_REQUIRE(false, ValueError, "character table: unknown class " << name);
  return 0;  // unreachable
}

size_t CharacterTable::irreducible_index(const std::string& name) const {
  for (size_t i = 0; i < irrNames_.size(); ++i)
    if (irrNames_[i] == name) return i;
  EMF_REQUIRE(false, ValueError, "character table: unknown irreducible " << name);
  return 0;  // unreachable
}

const CyclotomicElement& CharacterTable::value(size_t irr, size_t cls) const {
  EMF_REQUIRE(irr < values_.size() && cls < classes_.size(), ValueError,
              "character table: value index out of range");
  return values_[irr][cls];
}

std::string CharacterTable::power_class(const std::string& className, long k) const {
  size_t cur = class_index(className);
  long rem = mod_nonneg(k, classes_[cur].order);
  if (rem == 0) return identityClass_;
  for (long p = 2; rem > 1; ++p) {
    while (rem % p == 0) {
      const auto& pw = classes_[cur].powers;
      auto it = pw.find(p);
      EMF_REQUIRE(it != pw.end(), ValueError,
                  "character table: class " << classes_[cur].name
                                            << " lacks the power map at " << p);
      cur = class_index(it->second);
      rem /= p;
    }
  }
  return classes_[cur].name;
}

std::map<std::string, CyclotomicElement> CharacterTable::class_function(
    const std::map<std::string, long>& multiplicities) const {
  for (const auto& [name, m] : multiplicities) {
    (void)m;
    irreducible_index(name);  // reject unknown names
  }
  std::map<std::string, CyclotomicElement> out;
  for (size_t c = 0; c < classes_.size(); ++c) {
    CyclotomicElement acc{Rational(0)};
    for (const auto& [name, m] : multiplicities)
      if (m != 0) acc += Rational(m) * values_[irreducible_index(name)][c];
    out[classes_[c].name] = acc;
  }
  return out;
}

VirtualModuleTraces CharacterTable::traces_at_class(
    const std::map<std::string, long>& multiplicities,
    const std::string& className) const {
  auto f = class_function(multiplicities);
  long o = classes_[class_index(className)].order;
  std::map<long, long> t;
  for (long d : divisors_of(o)) {
    const CyclotomicElement& val = f.at(power_class(className, d));
    EMF_REQUIRE(val.is_rational(), ValueError,
                "traces at " << className << ": value at g^" << d
                             << " is not rational");
    Rational r = val.to_rational();
    EMF_REQUIRE(is_integer(r), ValueError,
                "traces at " << className << ": value at g^" << d
                             << " is not an integer");
    t[d] = to_long(num(r));
  }
  return VirtualModuleTraces(o, std::move(t), true);
}

std::map<std::string, long> decompose(
    const std::map<std::string, CyclotomicElement>& classFunction,
    const CharacterTable& table) {
  for (const auto& c : table.classes())
    EMF_REQUIRE(classFunction.count(c.name), ValueError,
                "decompose: class function has no value on class " << c.name);
  std::map<std::string, long> out;
  const auto& classes = table.classes();
  for (size_t i = 0; i < table.irreducible_names().size(); ++i) {
    CyclotomicElement acc{Rational(0)};
    for (size_t c = 0; c < classes.size(); ++c)
      acc += Rational(classes[c].size) * classFunction.at(classes[c].name) *
             table.value(i, c).conj();
    acc *= rational(1, table.group_order());
    EMF_REQUIRE(acc.is_rational(), ValueError,
                "decompose: multiplicity of " << table.irreducible_names()[i]
                                              << " is not rational — not a virtual module");
    Rational r = acc.to_rational();
    EMF_REQUIRE(is_integer(r), ValueError,
                "decompose: multiplicity of " << table.irreducible_names()[i]
                                              << " is not integral — not a virtual module");
    out[table.irreducible_names()[i]] = to_long(num(r));
  }
  return out;
}

}  // namespace emf
