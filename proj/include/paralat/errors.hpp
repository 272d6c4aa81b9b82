#pragma once

#include <stdexcept>
#include <string>

namespace paralat {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PARALAT_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

PARALAT_DEFINE_ERROR(DivByZero);
PARALAT_DEFINE_ERROR(InvalidRefinement);
PARALAT_DEFINE_ERROR(DependentInput);
PARALAT_DEFINE_ERROR(EmptyBasis);
PARALAT_DEFINE_ERROR(DegreeOutOfRange);
PARALAT_DEFINE_ERROR(RankDeficient);
PARALAT_DEFINE_ERROR(DependentPilots);
PARALAT_DEFINE_ERROR(DimensionTooLarge);
PARALAT_DEFINE_ERROR(RankZero);
PARALAT_DEFINE_ERROR(SingularGram);
PARALAT_DEFINE_ERROR(ParseError);
PARALAT_DEFINE_ERROR(MissingTarget);
PARALAT_DEFINE_ERROR(InvalidDelta);
PARALAT_DEFINE_ERROR(ModulusOverflow);
PARALAT_DEFINE_ERROR(NonIntegral);
// Raised when a symbolic certificate that the theory guarantees cannot be
// produced. Indicates a bug, never a user error.
PARALAT_DEFINE_ERROR(CertificationFailure);

#undef PARALAT_DEFINE_ERROR

}  // namespace paralat
