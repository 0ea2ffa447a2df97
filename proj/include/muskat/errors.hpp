#pragma once

#include <stdexcept>
#include <string>

namespace muskat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MUSKAT_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// curves
MUSKAT_DEFINE_ERROR(InvalidShapeError);
MUSKAT_DEFINE_ERROR(PoleError);
MUSKAT_DEFINE_ERROR(BranchCutError);
MUSKAT_DEFINE_ERROR(AdmissibilityError);
MUSKAT_DEFINE_ERROR(NotOnBoundaryError);
MUSKAT_DEFINE_ERROR(InvalidCount);

// specfun
MUSKAT_DEFINE_ERROR(DomainError);
MUSKAT_DEFINE_ERROR(ModulusError);
MUSKAT_DEFINE_ERROR(ReductionError);
MUSKAT_DEFINE_ERROR(BranchError);

// motherbody
MUSKAT_DEFINE_ERROR(StationaryPointError);
MUSKAT_DEFINE_ERROR(DegenerateError);
MUSKAT_DEFINE_ERROR(EndpointError);
MUSKAT_DEFINE_ERROR(QuadratureError);

// fields
MUSKAT_DEFINE_ERROR(WrongSideError);
MUSKAT_DEFINE_ERROR(OnSupportError);
MUSKAT_DEFINE_ERROR(FamilyError);

// evolution
MUSKAT_DEFINE_ERROR(DegenerateShapeError);
MUSKAT_DEFINE_ERROR(StepTooLarge);

// verify
MUSKAT_DEFINE_ERROR(RegionError);

#undef MUSKAT_DEFINE_ERROR

}  // namespace muskat
