#include "emf/vvforms.hpp"

#include <cstdlib>
#include <optional>
#include <utility>

#include "emf/error.hpp"

namespace emf {

namespace {

long mod_pos(long a, long m) { return ((a % m) + m) % m; }

// residue of an integer exponent mod 4, in 0..3 for either sign
unsigned long exponent_mod4(const Rational& e) {
  return mpz_fdiv_ui(num(e).get_mpz_t(), 4);
}

}  // namespace

VectorValuedForm::VectorValuedForm(long index, std::map<long, QSeries> components, long level)
    : m_(index), level_(level) {
  EMF_REQUIRE(index != 0, ValueError, "vector-valued form: index must be nonzero");
  EMF_REQUIRE(level >= 1, ValueError, "vector-valued form: level must be positive");
  const long twoM = 2 * std::labs(index);
  comps_.assign(static_cast<size_t>(twoM), QSeries());
  std::vector<bool> seen(static_cast<size_t>(twoM), false);
  for (auto& [r, s] : components) {
    long rr = mod_pos(r, twoM);
    EMF_REQUIRE(!seen[static_cast<size_t>(rr)], ValueError,
                "vector-valued form: two component keys collide at residue " << rr << " mod "
                                                                             << twoM);
    seen[static_cast<size_t>(rr)] = true;
    comps_[static_cast<size_t>(rr)] = std::move(s);
  }
  for (long r = 0; r < twoM; ++r) {
    const QSeries& s = comps_[static_cast<size_t>(r)];
    const Rational offset = rational(Integer(r) * r, Integer(4) * m_);
    for (const auto& [k, c] : s.terms()) {
      (void)c;
      const Rational e = s.exponent_of(k);
      EMF_REQUIRE(is_integer(e - offset), ValueError,
                  "vector-valued form: component " << r << " has exponent "
                                                   << rational_to_string(e) << " outside "
                                                   << rational_to_string(offset) << " + Z");
    }
  }
  for (long r = 0; r < twoM; ++r) {
    long rn = mod_pos(-r, twoM);
    if (rn < r) continue;
    QSeries expect = m_ > 0 ? comps_[static_cast<size_t>(r)] : -comps_[static_cast<size_t>(r)];
    EMF_REQUIRE(series_agree(comps_[static_cast<size_t>(rn)], expect), ValueError,
                "vector-valued form: components " << r << " and " << rn
                                                  << " break the reflection symmetry");
  }
}

const QSeries& VectorValuedForm::component(long r) const {
  return comps_[static_cast<size_t>(mod_pos(r, 2 * std::labs(m_)))];
}

QSeries kohnen_fold(const VectorValuedForm& f) {
  EMF_REQUIRE(f.index() == 1, ValueError,
              "kohnen_fold: defined for index 1, got index " << f.index());
  return rescale(f.component(0), Rational(4)) + rescale(f.component(1), Rational(4));
}

VectorValuedForm kohnen_unfold(const QSeries& f) {
  QSeries c0, c1;
  for (const auto& [k, c] : f.terms()) {
    const Rational e = f.exponent_of(k);
    EMF_REQUIRE(is_integer(e), ValueError,
                "kohnen_unfold: exponent " << rational_to_string(e) << " is not an integer");
    unsigned long rr = exponent_mod4(e);
    EMF_REQUIRE(rr == 0 || rr == 1, ValueError,
                "kohnen_unfold: exponent " << rational_to_string(e) << " lies in residue " << rr
                                           << " mod 4, outside the plus-space support");
    (rr == 0 ? c0 : c1).set_term(e / 4, c);
  }
  if (f.truncation()) {
    const Rational t = *f.truncation() / 4;
    c0.set_truncation_raw(t);
    c1.set_truncation_raw(t);
  }
  std::map<long, QSeries> comps;
  comps[0] = std::move(c0);
  comps[1] = std::move(c1);
  return VectorValuedForm(1, std::move(comps), 1);
}

PlusForm::PlusForm(long label, QSeries series) : label_(label), series_(std::move(series)) {
  EMF_REQUIRE(!series_.is_zero_series(), ValueError, "plus form: series has no terms");
  for (const auto& [k, c] : series_.terms()) {
    (void)c;
    const Rational e = series_.exponent_of(k);
    EMF_REQUIRE(is_integer(e), ValueError,
                "plus form: exponent " << rational_to_string(e) << " is not an integer");
    unsigned long rr = exponent_mod4(e);
    EMF_REQUIRE(rr == 0 || rr == 1, ValueError,
                "plus form: exponent " << rational_to_string(e) << " lies in residue " << rr
                                       << " mod 4, outside the plus-space support");
  }
  EMF_REQUIRE(series_.valuation() == rational(-label), ValueError,
              "plus form: leading exponent " << rational_to_string(series_.valuation())
                                             << " does not match label " << label);
  EMF_REQUIRE(coeff_eq(series_.leading_coeff(), Coeff(Rational(1))), ValueError,
              "plus form: leading coefficient is not 1");
}

namespace {

/* Echelon solve over the span theta * t4^a * j(4 tau)^b, 0 <= a <= A,
 * 0 <= b <= B. The member with (a, b) has leading term q^{-(a+4b)} with
 * coefficient 1. Constraints per requested label D: coefficient 1 at -D,
 * 0 at every other exponent <= 0, 0 at positive exponents = 2,3 mod 4 up to
 * the window. The system is solved exactly with one elimination for all
 * labels; it is underdetermined precisely by the algebraic relation between
 * j(4 tau) and t4, whose kernel vectors represent the zero function, so free
 * variables are set to 0. The assembled series are re-verified against the
 * support invariant through the full working precision; nullopt asks the
 * caller to enlarge the span. */
std::optional<std::vector<QSeries>> try_plus_solve(const std::vector<long>& labels, long A,
                                                   long B, long window, long prec) {
  const long L = A + 4 * B;
  const long target = std::max(window + 1, prec);
  const Rational tall(target + L + 2);

  const QSeries theta = theta_nullwert(1, 0, tall);
  const QSeries t4 = hauptmodul_t4(tall);
  const QSeries j4 =
      rescale(klein_j(Rational(rational_ceil(tall / 4) + 1)), Rational(4));

  const long U = (A + 1) * (B + 1);
  std::vector<QSeries> h(static_cast<size_t>(U));
  {
    std::vector<QSeries> t4pow(static_cast<size_t>(A + 1));
    std::vector<QSeries> j4pow(static_cast<size_t>(B + 1));
    t4pow[0] = QSeries::constant(Rational(1));
    for (long a = 1; a <= A; ++a) t4pow[static_cast<size_t>(a)] = t4pow[static_cast<size_t>(a - 1)] * t4;
    j4pow[0] = QSeries::constant(Rational(1));
    for (long b = 1; b <= B; ++b) j4pow[static_cast<size_t>(b)] = j4pow[static_cast<size_t>(b - 1)] * j4;
    for (long a = 0; a <= A; ++a)
      for (long b = 0; b <= B; ++b) {
        QSeries prod = theta * t4pow[static_cast<size_t>(a)] * j4pow[static_cast<size_t>(b)];
        EMF_REQUIRE(prod.truncation() && *prod.truncation() >= Rational(target), PrecisionError,
                    "plus-space solve: working precision lost in the span products");
        EMF_REQUIRE(prod.valuation() == rational(-(a + 4 * b)) &&
                        coeff_eq(prod.leading_coeff(), Coeff(Rational(1))),
                    CheckError, "plus-space solve: span member has an unexpected leading term");
        h[static_cast<size_t>(a * (B + 1) + b)] = std::move(prod);
      }
  }

  const size_t nlab = labels.size();
  std::vector<std::vector<Rational>> mat;
  for (long e = -L; e <= window; ++e) {
    long rr = mod_pos(e, 4);
    if (e > 0 && rr != 2 && rr != 3) continue;
    std::vector<Rational> row(static_cast<size_t>(U) + nlab, Rational(0));
    for (long i = 0; i < U; ++i)
      row[static_cast<size_t>(i)] = coeff_to_rational(h[static_cast<size_t>(i)].coefficient(Rational(e)));
    for (size_t t = 0; t < nlab; ++t) {
      if (e < 0)
        row[static_cast<size_t>(U) + t] = (e == -labels[t]) ? 1 : 0;
      else if (e == 0)
        row[static_cast<size_t>(U) + t] = (labels[t] == 0) ? 1 : 0;
    }
    mat.push_back(std::move(row));
  }

  const size_t nrows = mat.size();
  std::vector<long> pivotCol;
  size_t rank = 0;
  for (long c = 0; c < U && rank < nrows; ++c) {
    size_t p = rank;
    while (p < nrows && mat[p][static_cast<size_t>(c)] == 0) ++p;
    if (p == nrows) continue;
    std::swap(mat[p], mat[rank]);
    const Rational inv = Rational(1) / mat[rank][static_cast<size_t>(c)];
    for (auto& v : mat[rank]) v *= inv;
    for (size_t i = 0; i < nrows; ++i) {
      if (i == rank || mat[i][static_cast<size_t>(c)] == 0) continue;
      const Rational f = mat[i][static_cast<size_t>(c)];
      for (size_t j = 0; j < mat[i].size(); ++j) mat[i][j] -= f * mat[rank][j];
    }
    pivotCol.push_back(c);
    ++rank;
  }
  for (size_t i = rank; i < nrows; ++i)
    for (size_t t = 0; t < nlab; ++t)
      if (mat[i][static_cast<size_t>(U) + t] != 0) return std::nullopt;

  std::vector<QSeries> out;
  for (size_t t = 0; t < nlab; ++t) {
    QSeries f;
    for (size_t i = 0; i < pivotCol.size(); ++i) {
      const Rational& x = mat[i][static_cast<size_t>(U) + t];
      if (x != 0) f += h[static_cast<size_t>(pivotCol[i])].scaled(Coeff(x));
    }
    if (f.is_zero_series()) return std::nullopt;
    if (f.valuation() != rational(-labels[t])) return std::nullopt;
    for (const auto& [k, c] : f.terms()) {
      const Rational e = f.exponent_of(k);
      if (!is_integer(e)) return std::nullopt;
      unsigned long rm = exponent_mod4(e);
      if (rm == 2 || rm == 3) return std::nullopt;
      if (e < 0 && (e != rational(-labels[t]) || !coeff_eq(c, Coeff(Rational(1)))))
        return std::nullopt;
      if (e == 0 && labels[t] != 0) return std::nullopt;
    }
    out.push_back(f.with_truncation(Rational(prec)).compacted());
  }
  return out;
}

std::vector<PlusForm> solve_plus_labels(const std::vector<long>& labels, long dtop, long prec) {
  for (int attempt = 0; attempt < 3; ++attempt) {
    const long A = dtop + 4 + 8 * attempt;
    const long B = (dtop + 3) / 4 + 2 + 2 * attempt;
    const long window = 4 * dtop + 40 + 40 * attempt;
    auto res = try_plus_solve(labels, A, B, window, prec);
    if (!res) continue;
    std::vector<PlusForm> out;
    for (size_t i = 0; i < labels.size(); ++i)
      out.emplace_back(labels[i], std::move((*res)[i]));
    return out;
  }
  throw PrecisionError("plus-space solve did not stabilize after enlarging the span");
}

}  // namespace

std::vector<PlusForm> plus_basis(long dmax, long prec) {
  EMF_REQUIRE(dmax >= 0, ValueError, "plus_basis: dmax must be nonnegative");
  EMF_REQUIRE(prec >= 1, ValueError, "plus_basis: prec must be positive");
  std::vector<long> labels;
  for (long d = 0; d <= dmax; ++d)
    if (d % 4 == 0 || d % 4 == 3) labels.push_back(d);
  return solve_plus_labels(labels, dmax, prec);
}

PlusForm plus_form(long d, long prec) {
  EMF_REQUIRE(d >= 0 && (d % 4 == 0 || d % 4 == 3), ValueError,
              "plus_form: no basis element with label " << d);
  EMF_REQUIRE(prec >= 1, ValueError, "plus_form: prec must be positive");
  return solve_plus_labels({d}, d, prec).front();
}

}  // namespace emf
