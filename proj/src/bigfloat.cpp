#include "emf/bigfloat.hpp"

#include <cstdlib>
#include <vector>

namespace emf {

std::string BigFloat::to_string(size_t digits10) const {
  if (mpfr_zero_p(v_)) return "0";
  if (!mpfr_number_p(v_)) return "nan";
  mpfr_exp_t e;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits10, v_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  bool neg = !digits.empty() && digits[0] == '-';
  if (neg) digits.erase(0, 1);
  // mpfr convention: value = 0.digits * 10^e
  std::string out;
  if (e > 0 && static_cast<size_t>(e) <= digits.size() && e <= 40) {
    out = digits.substr(0, static_cast<size_t>(e)) + "." + digits.substr(static_cast<size_t>(e));
  } else if (e <= 0 && e > -8) {
    out = "0." + std::string(static_cast<size_t>(-e), '0') + digits;
  } else {
    out = digits.substr(0, 1) + "." + digits.substr(1) + "e" + std::to_string(e - 1);
  }
  while (out.find('.') != std::string::npos && out.find('e') == std::string::npos &&
         (out.back() == '0'))
    out.pop_back();
  if (!out.empty() && out.back() == '.') out.pop_back();
  return neg ? "-" + out : out;
}

BigFloatComplex exp_2pi_i(const BigFloatComplex& z) {
  mpfr_prec_t bits = std::max(z.re.precision(), z.im.precision());
  BigFloat two_pi = BigFloat::from_long(2, bits) * BigFloat::pi(bits);
  BigFloat mag = (-(two_pi * z.im)).exp();
  BigFloat phase = two_pi * z.re;
  return {mag * phase.cos(), mag * phase.sin(), z.digits};
}

}  // namespace emf
