#pragma once

#include <stdexcept>
#include <string>

namespace nhlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define NHLAB_ERROR(Name)                                              \
    struct Name : Error {                                              \
        using Error::Error;                                            \
        const char* kind() const noexcept override { return #Name; }   \
    }

NHLAB_ERROR(ParameterError);
NHLAB_ERROR(DomainError);
NHLAB_ERROR(ExcludedMomentum);
NHLAB_ERROR(ConvergenceError);
NHLAB_ERROR(ToleranceNotMet);
NHLAB_ERROR(SlowDecay);
NHLAB_ERROR(SingularTransform);
NHLAB_ERROR(OnCut);
NHLAB_ERROR(AtPole);
NHLAB_ERROR(FitUnstable);
NHLAB_ERROR(AsymptoteNotReached);
NHLAB_ERROR(ZeroDenominator);

#undef NHLAB_ERROR

} // namespace nhlab
