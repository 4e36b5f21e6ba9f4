#pragma once

#include <stdexcept>
#include <string>

namespace semiselftest {

/// Base class for all library errors. Messages name the violated invariant.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define SEMISELFTEST_DEFINE_ERROR(NAME)                            \
  class NAME : public Error {                                      \
   public:                                                         \
    explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
  }

SEMISELFTEST_DEFINE_ERROR(NotHermitian);
SEMISELFTEST_DEFINE_ERROR(NotPositiveSemidefinite);
SEMISELFTEST_DEFINE_ERROR(SingularMatrix);
SEMISELFTEST_DEFINE_ERROR(DimensionMismatch);
SEMISELFTEST_DEFINE_ERROR(NotNormalized);
SEMISELFTEST_DEFINE_ERROR(InvalidSpectrum);
SEMISELFTEST_DEFINE_ERROR(InvalidProbability);
SEMISELFTEST_DEFINE_ERROR(InvalidPovm);
SEMISELFTEST_DEFINE_ERROR(InvalidCorrelation);
SEMISELFTEST_DEFINE_ERROR(InvalidParameters);
SEMISELFTEST_DEFINE_ERROR(StructureMismatch);
SEMISELFTEST_DEFINE_ERROR(SingularSum);
SEMISELFTEST_DEFINE_ERROR(SingularLambda);
SEMISELFTEST_DEFINE_ERROR(NotCanonical);
SEMISELFTEST_DEFINE_ERROR(InvalidArgument);
SEMISELFTEST_DEFINE_ERROR(ParseError);

#undef SEMISELFTEST_DEFINE_ERROR

}  // namespace semiselftest
