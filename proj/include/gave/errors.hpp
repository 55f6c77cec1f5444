#pragma once

#include <stdexcept>
#include <string>

namespace gave {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GAVE_ERROR(Name)                                   \
    class Name : public Error {                            \
    public:                                                \
        explicit Name(const std::string& what) : Error(what) {} \
    }

GAVE_ERROR(SingularMatrix);
GAVE_ERROR(NonSquare);
GAVE_ERROR(NoConvergence);
GAVE_ERROR(ShapeMismatch);
GAVE_ERROR(DimensionMismatch);
GAVE_ERROR(ParseError);
GAVE_ERROR(InvalidSize);
GAVE_ERROR(InvalidConfig);
GAVE_ERROR(InvalidParams);
GAVE_ERROR(TraceUnavailable);
GAVE_ERROR(UnsupportedMethod);
GAVE_ERROR(UnsupportedPair);
GAVE_ERROR(NegativeEntry);
GAVE_ERROR(GridTooLarge);
GAVE_ERROR(ProblemTooLarge);

#undef GAVE_ERROR

}  // namespace gave
