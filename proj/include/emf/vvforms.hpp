#pragma once

#include <map>
#include <vector>

#include "emf/qseries.hpp"

namespace emf {

/** Vector-valued q-expansion attached to the index-m discriminant module:
 *  one series per residue r mod 2|m|, exponents of component r lying in
 *  r^2/4m + Z, and component(-r) = sign(m) * component(r). Residues missing
 *  from the input table are zero. The level is carried as metadata for the
 *  repackaging layer and does not constrain the expansion. */
class VectorValuedForm {
 public:
  VectorValuedForm(long index, std::map<long, QSeries> components, long level = 1);

  long index() const { return m_; }
  long level() const { return level_; }
  long component_count() const { return static_cast<long>(comps_.size()); }

  const QSeries& component(long r) const;  // r reduced mod 2|m|
  const std::vector<QSeries>& component_table() const { return comps_; }

 private:
  long m_;
  long level_;
  std::vector<QSeries> comps_;  // residues 0 .. 2|m|-1
};

/** F_0(4 tau) + F_1(4 tau) for an index-1 form: integer exponents supported
 *  on 0,1 mod 4. ValueError for any other index. */
QSeries kohnen_fold(const VectorValuedForm& f);

/** Inverse of kohnen_fold: component r collects the coefficients at
 *  exponents = r^2 mod 4, each divided by 4. ValueError when the input has a
 *  non-integer exponent or support meeting 2,3 mod 4. */
VectorValuedForm kohnen_unfold(const QSeries& f);

/** Weight 1/2 plus-space element: integer exponents supported on 0,1 mod 4,
 *  leading term exactly 1*q^{-label}. */
class PlusForm {
 public:
  PlusForm(long label, QSeries series);

  long label() const { return label_; }
  const QSeries& series() const { return series_; }

 private:
  long label_;
  QSeries series_;
};

/** The echelon family f_D = q^{-D} + O(q) for D = 0, 3, 4, 7, 8, ... up to
 *  dmax, with f_0 = theta; every element has support in 0,1 mod 4 and no
 *  negative exponents besides -D. Series are truncated at exponent prec.
 *  PrecisionError when the internal solve does not stabilize. */
std::vector<PlusForm> plus_basis(long dmax, long prec);

/** Single echelon element f_d. ValueError unless d >= 0 and d = 0,3 mod 4. */
PlusForm plus_form(long d, long prec);

}  // namespace emf
