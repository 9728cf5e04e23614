#pragma once

#include <stdexcept>
#include <string>

namespace flowlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define FLOWLAB_DEFINE_ERROR(Name)                       \
    struct Name : Error {                                \
        explicit Name(const std::string& what = #Name)   \
            : Error(what) {}                             \
    }

FLOWLAB_DEFINE_ERROR(DegenerateCurve);
FLOWLAB_DEFINE_ERROR(TooFewNodes);
FLOWLAB_DEFINE_ERROR(InvalidRegion);
FLOWLAB_DEFINE_ERROR(NotAGraph);
FLOWLAB_DEFINE_ERROR(SingularArgument);
FLOWLAB_DEFINE_ERROR(NonConvergedDerivative);
FLOWLAB_DEFINE_ERROR(NumericalBreakdown);
FLOWLAB_DEFINE_ERROR(OutsideTube);
FLOWLAB_DEFINE_ERROR(TubeTooWide);
FLOWLAB_DEFINE_ERROR(IllConditionedLayer);
FLOWLAB_DEFINE_ERROR(TopologyBreak);
FLOWLAB_DEFINE_ERROR(OracleFailure);
FLOWLAB_DEFINE_ERROR(FitDomainError);
FLOWLAB_DEFINE_ERROR(MissingKey);
FLOWLAB_DEFINE_ERROR(BadValue);

#undef FLOWLAB_DEFINE_ERROR

}  // namespace flowlab
