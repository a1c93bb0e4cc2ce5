#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "emf/qseries.hpp"
#include "emf/vvforms.hpp"

namespace emf {

/** prefactor * prod_k eta(b_k tau)^{e_k} with positive rational scales b_k;
 *  the eta weight is (sum_k e_k)/2. */
struct EtaQuotientSpec {
  Rational prefactor = Rational(1);
  std::vector<std::pair<Rational, long>> factors;  // (scale b, exponent e)
};

/** Integer 2x2 matrix [[a, b], [c, d]]; determinant is not implied. */
struct SL2 {
  long a = 1, b = 0, c = 0, d = 1;
};

SL2 sl2_mul(const SL2& g, const SL2& h);
long sl2_det(const SL2& g);

/** Deterministic completion of a bottom-row residue class to a determinant-1
 *  matrix: the result has bottom row congruent to (i/n, j/n) mod N/n for
 *  n = gcd(i, j, N), picking the smallest admissible c >= 0, then the
 *  smallest d >= 0, then 0 <= a < c.  c > 0 whenever i != 0 mod N; the class
 *  of (0, j) with gcd(j, N) = N yields the identity. */
SL2 gamma0_for(long i, long j, long N);

/** Weight-1/2 slash of an eta-quotient component vector by (gamma, principal
 *  square root), through the index-m transformation matrices.  Components are
 *  keyed by residues mod 2|m| (missing residues are zero); each supplied
 *  component must have eta exponents summing to exactly 1 (net weight 1/2),
 *  so the automorphy powers of (c tau + d) cancel identically -- anything
 *  else is a weight error.  gamma needs det 1 and c > 0.  After the slash,
 *  thetaMultiplier * theta_{m,r} is added to component r (the theta vector is
 *  a fixed point of every slash).  The result is exact: phases are tracked as
 *  cyclotomic coefficients and the scale square roots via Gauss sums. */
std::map<long, QSeries> eta_slash(long index, const std::map<long, EtaQuotientSpec>& spec,
                                  const SL2& gamma, const Rational& prec,
                                  const Rational& thetaMultiplier = Rational(0));

/** eta_slash by [[0,-1],[1,0]]: each eta scale b turns into 1/b after the
 *  Hermite step and the components remix through the index matrices. */
std::map<long, QSeries> eta_slash_S(long index, const std::map<long, EtaQuotientSpec>& spec,
                                    const Rational& prec,
                                    const Rational& thetaMultiplier = Rational(0));

/** Eta-quotient backing for one family slot: one quotient per residue plus a
 *  rational multiple of the theta vector added on top. */
struct EtaMemberSpec {
  std::map<long, EtaQuotientSpec> components;
  Rational theta = Rational(0);
};

/** Eta descriptions for the family slots consumed by the i != 0 rows of the
 *  repackaging (slot n serves every row (i, j) with gcd(i, j, N) = n).
 *  Construction validates: nonzero index, positive level, slot keys dividing
 *  the level, positive scales, and eta weight 1/2 on every nonempty
 *  component. */
class EtaSlashEngine {
 public:
  EtaSlashEngine(long index, long level, std::map<long, EtaMemberSpec> members);

  long index() const { return m_; }
  long level() const { return level_; }
  bool covers(long divisor) const { return members_.count(divisor) != 0; }
  const EtaMemberSpec& member_spec(long divisor) const;  // ValueError on a gap

  /** Unslashed expansion of the slot: quotient plus theta correction, one
   *  series per residue mod 2|index|. */
  std::map<long, QSeries> expand(long divisor, const Rational& prec) const;

  /** Slash of the slot by (gamma, principal branch). */
  std::map<long, QSeries> slash(long divisor, const SL2& gamma, const Rational& prec) const;

 private:
  long m_ = 1;
  long level_ = 1;
  std::map<long, EtaMemberSpec> members_;
};

/** Divisor-indexed tuple of vector-valued forms: slot n (for n | N) carries
 *  index m and declared level N/n; every divisor of N must be present and all
 *  slots share the index. */
class FormFamily {
 public:
  FormFamily(long level, std::map<long, VectorValuedForm> members);

  long level() const { return N_; }
  long index() const { return m_; }
  const VectorValuedForm& member(long divisor) const;  // ValueError when absent
  const std::map<long, VectorValuedForm>& members() const { return members_; }

 private:
  long N_ = 1;
  long m_ = 1;
  std::map<long, VectorValuedForm> members_;
};

/** The repackaged object: one series per label (i, j, r) with i, j mod N and
 *  r mod 2|m|; absent labels are zero.  Construction validates that
 *  coefficients lie in Q(zeta_N) (cyclotomic order dividing N), that the
 *  support of component (i, j, r) sits in r^2/4m + ij/N + Z, and the
 *  inherited symmetry component(-i,-j,-r) = sign(m) * component(i,j,r). */
class CheckForm {
 public:
  using Label = std::tuple<long, long, long>;

  CheckForm(long index, long level, std::map<Label, QSeries> components);

  long index() const { return m_; }
  long level() const { return N_; }
  /** Component at (i, j, r); indices reduced into range, zero when absent. */
  const QSeries& component(long i, long j, long r) const;
  const std::map<Label, QSeries>& components() const { return comps_; }

 private:
  long m_ = 1;
  long N_ = 1;
  std::map<Label, QSeries> comps_;
};

/** Row i = 0 of the repackaging, for families whose slot (0, j) carries the
 *  gcd(j, N)-indexed member directly:
 *    (j, r)  ->  (1/N) sum_{j' mod N} e(-j j'/N) member(gcd(j', N))_r.
 *  Coefficients land in Q(zeta_N); arithmetic normalization demotes them to
 *  rationals whenever the sum is Galois-stable. */
std::map<std::pair<long, long>, QSeries> check_row0(const FormFamily& fam);

/** Full repackaging: row 0 from the members, row i != 0 by slashing the
 *  gcd(i, j, N) engine slot at the deterministic completion of (i, j), then
 *  the same averaged transform in j.  Truncation is the least truncation
 *  carried by any member component (ValueError when none is set).  Every
 *  engine slot with a family counterpart is expanded and checked against the
 *  ingested member (CheckError on disagreement); a slot required by an
 *  i != 0 row but missing from the engine is a coverage gap (ValueError). */
CheckForm repackage_full(const FormFamily& fam, const EtaSlashEngine& engine);

/** Inverse transform in j: (i, j) -> { r -> sum_{j'} e(j j'/N) component(i, j', r) }.
 *  Rows are returned as plain component tables: for i != 0 they mix exponent
 *  residue classes, so they do not generally assemble into a single
 *  VectorValuedForm support. */
using ComponentTable = std::map<std::pair<long, long>, std::map<long, QSeries>>;
ComponentTable inverse_repackage(const CheckForm& f);

}  // namespace emf
