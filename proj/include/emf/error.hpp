#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace emf {

// Error taxonomy:
//   DomainError    operands live in incompatible coefficient domains
//   ValueError     argument outside the documented domain of an operation
//   PrecisionError requested output cannot be certified from the available truncation
//   CheckError     a consistency identity failed on ingested or computed data
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : Error {
  using Error::Error;
};
struct ValueError : Error {
  using Error::Error;
};
struct PrecisionError : Error {
  using Error::Error;
};
struct CheckError : Error {
  using Error::Error;
};

}  // namespace emf

// Requirement macro with streamed message; throws the given emf error type.
#define EMF_REQUIRE(cond, ExcType, msg)          \
  do {                                           \
    if (!(cond)) {                               \
      std::ostringstream emf_require_os_;        \
      emf_require_os_ << msg;                    \
      throw ExcType(emf_require_os_.str());      \
    }                                            \
  } while (0)
