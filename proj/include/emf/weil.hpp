#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "emf/bigfloat.hpp"
#include "emf/cyclotomic.hpp"
#include "emf/error.hpp"
#include "emf/rational.hpp"

namespace emf {

// Rank-3 lattice family: signature (2,1) for m > 0, with Gram data determined
// by the pair (m, N).  m must be nonzero, N must be positive.
struct LatticeLmN {
  long m = 1;
  long N = 1;
};

LatticeLmN make_lattice(long m, long N);

// Vector written in the coordinates lambda(c, b, a) = [[a, b/m], [N c, -a]].
struct LatticeVector {
  Rational c, b, a;
};

// Q(lambda) = m a^2 + N b c
Rational qform(const LatticeLmN& L, const LatticeVector& v);

// (u, v) = 2 m a a' + N (b' c + b c')
Rational bilinear(const LatticeLmN& L, const LatticeVector& u, const LatticeVector& v);

// membership: L requires a, b, c integral; the dual requires N c, N b, 2 m a integral
bool in_lattice(const LatticeLmN& L, const LatticeVector& v);
bool in_dual(const LatticeLmN& L, const LatticeVector& v);

// Discriminant group element (i, j, r) with 0 <= i, j < N and 0 <= r < 2|m|,
// standing for the coset of lambda(i/N, j/N, r/2m).
struct DiscIndex {
  long i = 0, j = 0, r = 0;
};

long disc_size(const LatticeLmN& L);
long disc_position(const LatticeLmN& L, const DiscIndex& d);
DiscIndex disc_label(const LatticeLmN& L, long pos);
LatticeVector disc_representative(const LatticeLmN& L, const DiscIndex& d);

// The (2|m| N^2)-dimensional representation attached to (m, N).  rho_t is
// diagonal with entries e(r^2/4m + i j / N); rho_s has the Gauss-normalized
// entries e(-sgn(m)/8) / sqrt(2|m| N^2) * e(-r r'/2m - (i j' + j i')/N).
// Negative m selects the dual normalization; m = 0 is rejected.
class WeilRep {
 public:
  WeilRep(long m, long N);

  long m() const { return lattice_.m; }
  long level_n() const { return lattice_.N; }
  const LatticeLmN& lattice() const { return lattice_; }
  long size() const { return size_; }

  const std::vector<CyclotomicElement>& rho_t_diag() const { return rhoT_; }
  const std::vector<std::vector<CyclotomicElement>>& rho_s() const { return rhoS_; }

  // overall scalar of rho_s: e(-sgn(m)/8) / sqrt(2|m| N^2), exact
  const CyclotomicElement& rho_s_scalar() const { return gamma_; }

  DiscIndex label(long pos) const { return disc_label(lattice_, pos); }
  long position(const DiscIndex& d) const { return disc_position(lattice_, d); }

  // in-place scaling of single entries, for corruption experiments
  void scale_t_entry(long pos, const CyclotomicElement& factor);
  void scale_s_entry(long row, long col, const CyclotomicElement& factor);

 private:
  LatticeLmN lattice_;
  long size_ = 0;
  std::vector<CyclotomicElement> rhoT_;
  std::vector<std::vector<CyclotomicElement>> rhoS_;
  CyclotomicElement gamma_;
};

WeilRep weil_rep(long m, long N);

// Exact verification that the generator matrices satisfy the defining
// relations: rho_t and rho_s unitary, rho_s^2 = e(-sgn(m)/4) * (index
// negation), (rho_s rho_t)^3 = rho_s^2, and rho_s^8 = id.  Throws CheckError
// naming the first failed relation; returns the list of confirmed relations.
struct WeilCheckReport {
  long m = 0;
  long N = 0;
  long size = 0;
  std::vector<std::string> passed;
};

WeilCheckReport rep_relations_check(const WeilRep& W);

// Cusp at infinity for positive (m, N): isotropic pair (l, l'), the rank-1
// complement generator kappa with dual kappa', and K_m = m.
struct CuspDataInfinity {
  LatticeVector l, lprime, kappa, kappaPrime;
  long Km = 0;
};

CuspDataInfinity cusp_data_infinity(long m, long N);

// Z_L(tau) = lambda(1/N, -m tau^2, tau) rendered as the 2x2 matrix
// [[tau, -tau^2], [1, -tau]] at the given precision.
std::array<std::array<BigFloatComplex, 2>, 2> z_l(const BigFloatComplex& tau, long m, long N);

// (Z_L(tau), lambda(c, b, a)) = 2 m a tau - m N c tau^2 + b
BigFloatComplex z_pairing(const BigFloatComplex& tau, const LatticeVector& v, long m, long N);

// Upper half plane point given exactly as the root of A X^2 + B X + C with
// A > 0 and B^2 - 4AC < 0; numeric rendering on demand.
struct HalfPlanePoint {
  Rational A, B, C;

  Rational re() const { return -B / (A * 2); }
  Rational norm() const { return C / A; }       // |point|^2
  Rational disc() const { return B * B - A * C * 4; }
  BigFloatComplex numeric(long digits = 20) const;
};

// Root of m N c X^2 - 2 m a X - b in the upper half plane, for a negative-norm
// vector with c != 0.  Q(v) >= 0 raises "not a divisor point"; c = 0 raises
// "cusp contribution".
HalfPlanePoint lambda_perp(const LatticeLmN& L, const LatticeVector& v);

// One Heegner-type point of the divisor: primitive direction with c > 0, its
// exact point data, and the integer multiplicity summed over positive
// multiples of the direction.
struct DivisorPoint {
  LatticeVector direction;
  HalfPlanePoint point;
  Integer multiplicity;
  bool in_fundamental_domain = false;
};

// Coefficient accessor for the divisor sum: (i, j, D, r) -> integer where
// (i, j) is mod N, r is mod 2|m|, and D = 4m Q of the vector being weighted.
using DivisorCoeffFn = std::function<Integer(long i, long j, const Rational& D, long r)>;

// Enumerates primitive dual directions lambda(c, b, a) with c > 0 (the c < 0
// half is folded by sign), integer coordinates (N c, N b, 2 m a) bounded by
// max(|c|, |b|, |a|) <= heightBound, and Q < 0.  The multiplicity of a
// direction mu is sum over x >= 1 of coeff(label(x mu), 4m Q(x mu), r(x mu));
// minSupport is the most negative D carrying a coefficient, used to cut the
// sum.  Directions with zero total multiplicity are omitted.
std::vector<DivisorPoint> divisor_enumerate(const DivisorCoeffFn& coeff, long m, long N,
                                            long heightBound, const Rational& minSupport);

}  // namespace emf
