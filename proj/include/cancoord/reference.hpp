#pragma once

// Gaussian objective family and the ready-made two-function scenario:
//   F1: (p1, p2) -> o1 = exp(-p1^2 / (2 p2^2))
//   F2: (p1, o1) -> o2 = exp(-(p1 - 6)^2 * o1^2 / 2)
// F1 and F2 share p1, and o1 feeds F2.

#include "cancoord/model.hpp"

namespace cancoord {

/// exp(-(x - center)^2 / (2 width^2)). Throws ZeroWidth when width == 0.
double gaussian_param_width(double x, double center, double width);

/// exp(-(x - center)^2 * coupling^2 / 2), the product form of
/// exp(-(x - center)^2 / (2 / coupling^2)). Equals 1 at coupling == 0.
double gaussian_objective_width(double x, double center, double coupling);

/// o1 as a function of (p1, p2). Throws ZeroWidth for p2 == 0.
double eval_o1(double p1, double p2);

/// o2 as a function of (p1, o1). Throws NonFiniteInput for non-finite input.
double eval_o2(double p1, double o1);

inline constexpr double kO2Center = 6.0;

/// p1: default 4, [0, 10] step 1. p2: default 100, [50, 300] step 10.
/// Both objectives maximized. `scale` multiplies both evaluator outputs.
Scenario reference_scenario(double scale = 1.0);

std::vector<ParameterSpec> reference_parameters();
std::vector<FunctionSpec> reference_functions(double scale = 1.0);

}  // namespace cancoord
