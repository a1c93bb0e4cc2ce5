#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "emf/cyclotomic.hpp"
#include "emf/qseries.hpp"

namespace emf {

/** Integer trace data tr(g^d | U) of a finite-order operator g on a virtual
 *  module U, indexed by the divisors d of the order of g.
 *
 *  Integral traces force the eigenvalue multiset to be Galois-stable, so
 *  tr(g^k | U) depends only on gcd(k, order); trace(k) performs that
 *  reduction.  Construction requires a complete divisor table and checks that
 *  the Moebius data v_b = (1/b) sum_{d|b} mu(b/d) tr(g^d) is integral —
 *  non-integral v_b means the table is not character data at all.
 *
 *  virtual_module = false declares the data a genuine (non-virtual) module;
 *  ud_from_traces then rejects negative eigenvalue multiplicities. */
class VirtualModuleTraces {
 public:
  VirtualModuleTraces(long order, std::map<long, long> traces,
                      bool virtual_module = true);

  long order() const { return order_; }
  bool virtual_module() const { return virtual_; }
  const std::map<long, long>& traces() const { return traces_; }

  // tr(g^k | U) for any integer k (gcd reduction; k = 0 gives the dimension)
  long trace(long k) const;

  // trace table of the element g^k, of order order()/gcd(order(), k)
  VirtualModuleTraces power(long k) const;

 private:
  long order_;
  bool virtual_;
  std::map<long, long> traces_;
};

/** The exponent table of tr(g | Lambda_{-t} U) = prod_b (1 - t^b)^{v_b},
 *  written multiplicatively as the formal product prod_b b^{v_b}. */
class FrameShape {
 public:
  explicit FrameShape(std::map<long, long> vb);

  long v(long b) const;  // 0 when b is not in the support
  const std::map<long, long>& table() const { return vb_; }

  // sum_b b * v_b = dimension of the underlying virtual module
  long degree() const;

  std::string to_string() const;  // e.g. "1^-8 2^128"; "1^0" for the zero shape

 private:
  std::map<long, long> vb_;  // nonzero entries only
};

// Moebius inversion of the divisor traces; checks sum_{b|d} b*v_b = tr(g^d)
// for every divisor d of the order.
FrameShape vb_from_traces(const VirtualModuleTraces& T);

// Multiplicity u_d of the primitive d-th roots of unity in the eigenvalue
// multiset, by exact finite Fourier inversion over the cyclic group (roots of
// unity as cyclotomic elements).  Cross-checks v_b = sum_a mu(a) u_{ab}
// against vb_from_traces; negative u_d on data declared genuine is an error.
std::map<long, long> ud_from_traces(const VirtualModuleTraces& T);

// Trace table of the Adams operation psi^k applied to the module:
// tr(g^d | psi^k U) = tr(g^{kd} | U), same group element, same order.
VirtualModuleTraces adams_traces(const VirtualModuleTraces& T, long k);

/** tr(g | Lambda_{-t} U) for sign = +1, tr(g | S_t U) for sign = -1, as a
 *  series in t truncated at t_prec.  Computes both closed forms — the frame
 *  shape product prod_b (1 - t^b)^{sign*v_b} and the exponential
 *  exp(-sign * sum_k tr(g^k|U) t^k / k) — and requires exact agreement
 *  (CheckError on mismatch: the ingested data is corrupt). */
QSeries lambda_trace(const VirtualModuleTraces& T, int sign, long t_prec);

/** Power-map audit: for p prime dividing the order, checks
 *    v_b(g^p) = p v_{bp}(g) + [p does not divide b] v_b(g)
 *  for every b, plus the iterated closed form
 *    v_b(g^{p^k}) = p^k v_{b p^k}(g)            if p | b,
 *                 = sum_{j<=k} p^j v_{b p^j}(g)  otherwise,
 *  for k up to one past the p-part of the order.  Violations are collected,
 *  not thrown: the report is a data-sanity gate. */
struct PowerMapReport {
  long order = 0;
  long p = 0;
  bool ok = true;
  std::vector<std::string> checked;
  std::vector<std::string> failures;
};

PowerMapReport power_map_check(const VirtualModuleTraces& T, long p);

// (1/N) sum_{n|N} phi(N/n) tr(g^n|U) and sum_{n|N} v_n(g), asserted equal
// (CheckError otherwise); N is an arbitrary positive integer.
std::pair<Rational, long> weight_identity(const VirtualModuleTraces& T, long N);

struct ConjugacyClass {
  std::string name;
  long size = 0;
  long order = 0;
  std::map<long, std::string> powers;  // prime p -> class of g^p
};

/** Exact character table: classes with size/order/power-map data and one row
 *  of cyclotomic values per irreducible.  Row orthogonality
 *  sum_c |c| chi(c) conj(psi(c)) = |G| delta is validated on construction,
 *  as are the structural power-map requirements (every prime dividing a
 *  class order has a target of the right order). */
class CharacterTable {
 public:
  CharacterTable(std::vector<ConjugacyClass> classes,
                 std::vector<std::string> irreducibleNames,
                 std::vector<std::vector<CyclotomicElement>> values);  // [irr][class]

  long group_order() const { return groupOrder_; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  const std::vector<std::string>& irreducible_names() const { return irrNames_; }

  size_t class_index(const std::string& name) const;
  size_t irreducible_index(const std::string& name) const;
  const CyclotomicElement& value(size_t irr, size_t cls) const;

  // class of g^k for g in the named class and any k >= 0, by walking the
  // prime power maps; ValueError when a needed prime target is missing
  std::string power_class(const std::string& className, long k) const;

  // class function of the virtual module sum_chi m_chi U_chi
  std::map<std::string, CyclotomicElement> class_function(
      const std::map<std::string, long>& multiplicities) const;

  // divisor trace table of sum_chi m_chi U_chi restricted to <g> for g in the
  // named class; traces must come out rational integers
  VirtualModuleTraces traces_at_class(
      const std::map<std::string, long>& multiplicities,
      const std::string& className) const;

 private:
  std::vector<ConjugacyClass> classes_;
  std::vector<std::string> irrNames_;
  std::vector<std::vector<CyclotomicElement>> values_;
  long groupOrder_ = 0;
  std::string identityClass_;
};

// Multiplicity of each irreducible in an exact class function via the inner
// product (1/|G|) sum_c |c| f(c) conj(chi(c)); a non-integral multiplicity
// means the input is not a virtual module (ValueError).
std::map<std::string, long> decompose(
    const std::map<std::string, CyclotomicElement>& classFunction,
    const CharacterTable& table);

}  // namespace emf
