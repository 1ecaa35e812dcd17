#pragma once

#include <stdexcept>
#include <string>

namespace qres {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QRES_DEFINE_ERROR(Name)              \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(std::string(#Name ": ") + what) {} \
  }

QRES_DEFINE_ERROR(NonHermitian);
QRES_DEFINE_ERROR(NotPositiveSemidefinite);
QRES_DEFINE_ERROR(InvalidState);
QRES_DEFINE_ERROR(InvalidChannel);
QRES_DEFINE_ERROR(DimensionMismatch);
QRES_DEFINE_ERROR(InvalidRank);
QRES_DEFINE_ERROR(AlphaOutOfRange);
QRES_DEFINE_ERROR(SupportViolation);
QRES_DEFINE_ERROR(BallUnsupported);
QRES_DEFINE_ERROR(TheoryUnsupported);
QRES_DEFINE_ERROR(DimensionCap);
QRES_DEFINE_ERROR(NotRational);
QRES_DEFINE_ERROR(DimensionOverflow);
QRES_DEFINE_ERROR(InfeasibleRounding);
QRES_DEFINE_ERROR(InvalidGibbs);
QRES_DEFINE_ERROR(HypothesisViolated);
QRES_DEFINE_ERROR(DegenerateVariance);
QRES_DEFINE_ERROR(NoFeasiblePoint);
QRES_DEFINE_ERROR(InvalidXi);
QRES_DEFINE_ERROR(InvalidArgument);

#undef QRES_DEFINE_ERROR

}  // namespace qres
