#pragma once

#include <string>

#include "gave/presets.hpp"

namespace gave {

// 4x4 comparison examples: a GRMS configuration next to the competing method
// it is compared against. x0 = y0 = 0 and RES <= 1e-9 in the original runs.
struct ComparisonExample {
    std::string name;
    GaveProblem problem;
    GrmsConfig grms;
    MethodSpec grms_spec;  // the same configuration as a grms method spec
    MethodSpec other;      // rms / mgsor / nsor
};

ComparisonExample rms_comparison_example();    // ex41
ComparisonExample mgsor_comparison_example();  // ex42
ComparisonExample nsor_comparison_example();   // ex43

}  // namespace gave
