#pragma once

#include <stdexcept>
#include <string>

namespace padicdyn {

// Every thrown error carries a stable name so the CLI can print it on the
// diagnostic stream and pick the right exit code.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define PADICDYN_ERROR(NAME)                                        \
    class NAME : public Error {                                     \
    public:                                                         \
        explicit NAME(const std::string& what = "")                 \
            : Error(#NAME, what) {}                                 \
    }

PADICDYN_ERROR(NegativeValuation);
PADICDYN_ERROR(CommonFactor);
PADICDYN_ERROR(NotFixed);
PADICDYN_ERROR(NotPeriodic);
PADICDYN_ERROR(NotSplitOverQp);
PADICDYN_ERROR(TypeIPoint);
PADICDYN_ERROR(NonIntegralRadius);
PADICDYN_ERROR(ProbeExhausted);
PADICDYN_ERROR(NotInTree);
PADICDYN_ERROR(InfiniteValue);
PADICDYN_ERROR(DirectionEnumerationInfeasible);
PADICDYN_ERROR(FixedPointsNotRational);
PADICDYN_ERROR(SlopeCertificationFailed);
PADICDYN_ERROR(IncompleteEnumeration);
PADICDYN_ERROR(RootsNotRational);
PADICDYN_ERROR(IrrationalCriticalPoint);
PADICDYN_ERROR(ZeroPolynomial);
PADICDYN_ERROR(PrecisionCapExceeded);
PADICDYN_ERROR(ParseError);

#undef PADICDYN_ERROR

} // namespace padicdyn
