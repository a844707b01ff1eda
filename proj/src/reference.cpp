#include "cancoord/reference.hpp"

#include <cmath>

namespace cancoord {

double gaussian_param_width(double x, double center, double width) {
  if (width == 0.0) throw Error(ErrorCode::ZeroWidth, "gaussian width is zero");
  const double d = x - center;
  return std::exp(-(d * d) / (2.0 * width * width));
}

double gaussian_objective_width(double x, double center, double coupling) {
  const double d = x - center;
  return std::exp(-(d * d) * (coupling * coupling) / 2.0);
}

double eval_o1(double p1, double p2) { return gaussian_param_width(p1, 0.0, p2); }

double eval_o2(double p1, double o1) {
  if (!std::isfinite(p1) || !std::isfinite(o1)) {
    throw Error(ErrorCode::NonFiniteInput, "eval_o2 requires finite inputs");
  }
  return gaussian_objective_width(p1, kO2Center, o1);
}

std::vector<ParameterSpec> reference_parameters() {
  return {
      {"p1", 4.0, 0.0, 10.0, 1.0},
      {"p2", 100.0, 50.0, 300.0, 10.0},
  };
}

std::vector<FunctionSpec> reference_functions(double scale) {
  EvaluatorArgs f1_args{{"center", 0.0}};
  EvaluatorArgs f2_args{{"center", kO2Center}};
  if (scale != 1.0) {
    f1_args["scale"] = scale;
    f2_args["scale"] = scale;
  }
  return {
      {"F1", {"p1", "p2"}, {"o1", Direction::Maximize, ""}, {},
       {"gaussian_param_width", f1_args}},
      {"F2", {"p1", "o1"}, {"o2", Direction::Maximize, ""}, {},
       {"gaussian_objective_width", f2_args}},
  };
}

Scenario reference_scenario(double scale) {
  return build_scenario(reference_parameters(), reference_functions(scale));
}

}  // namespace cancoord
