#pragma once

#include <stdexcept>
#include <string>

namespace twz {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TWZ_DEFINE_ERROR(Name)              \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

// Evaluation at or too near a singular locus, or outside a field's domain.
TWZ_DEFINE_ERROR(DomainError)
// Derivative order requested beyond what a jet carries.
TWZ_DEFINE_ERROR(OrderError)
// One-sided quantity requested exactly on the light cone.
TWZ_DEFINE_ERROR(AmbiguousError)
TWZ_DEFINE_ERROR(SingularError)
TWZ_DEFINE_ERROR(SingularMetricError)
TWZ_DEFINE_ERROR(FrameMismatchError)
TWZ_DEFINE_ERROR(NotInSpinGroupError)
TWZ_DEFINE_ERROR(CaViolationError)
TWZ_DEFINE_ERROR(DimensionError)
TWZ_DEFINE_ERROR(NonRealPairingError)
TWZ_DEFINE_ERROR(UnknownTransitionError)
TWZ_DEFINE_ERROR(ScaleMismatchError)
TWZ_DEFINE_ERROR(NonTransversalError)
TWZ_DEFINE_ERROR(EmptyRegionError)
TWZ_DEFINE_ERROR(IoError)
TWZ_DEFINE_ERROR(ConfigError)

#undef TWZ_DEFINE_ERROR

}  // namespace twz
