#include <cmath>

#include "cancoord/model.hpp"
#include "cancoord/reference.hpp"

namespace cancoord {

namespace {

void check_args(const EvaluatorArgs& args, std::initializer_list<std::string_view> allowed,
                std::string_view kind) {
  for (const auto& [key, value] : args) {
    bool ok = key == "scale";
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) {
      throw Error(ErrorCode::InvalidEvaluatorArgs,
                  "unknown argument '" + key + "' for evaluator '" + std::string(kind) + "'");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::InvalidEvaluatorArgs, "argument '" + key + "' is not finite");
    }
  }
}

void check_arity(std::size_t arity, std::size_t expected, std::string_view kind) {
  if (arity != expected) {
    throw Error(ErrorCode::InvalidEvaluatorArgs,
                "evaluator '" + std::string(kind) + "' takes " + std::to_string(expected) +
                    " inputs, got " + std::to_string(arity));
  }
}

double arg_or(const EvaluatorArgs& args, const std::string& key, double fallback) {
  auto it = args.find(key);
  return it == args.end() ? fallback : it->second;
}

EvaluatorRegistry make_builtin() {
  EvaluatorRegistry r;
  // inputs: [x, width]
  r.register_kind("gaussian_param_width", [](const EvaluatorArgs& args, std::size_t arity) {
    check_args(args, {"center"}, "gaussian_param_width");
    check_arity(arity, 2, "gaussian_param_width");
    const double center = arg_or(args, "center", 0.0);
    return EvaluatorFn([center](std::span<const double> in) {
      return gaussian_param_width(in[0], center, in[1]);
    });
  });
  // inputs: [x, coupling]
  r.register_kind("gaussian_objective_width", [](const EvaluatorArgs& args, std::size_t arity) {
    check_args(args, {"center"}, "gaussian_objective_width");
    check_arity(arity, 2, "gaussian_objective_width");
    const double center = arg_or(args, "center", 0.0);
    return EvaluatorFn([center](std::span<const double> in) {
      return gaussian_objective_width(in[0], center, in[1]);
    });
  });
  // bias + sum_i w<i> * x_i, weights default to 1
  r.register_kind("linear", [](const EvaluatorArgs& args, std::size_t arity) {
    std::vector<double> weights(arity, 1.0);
    for (const auto& [key, value] : args) {
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::InvalidEvaluatorArgs, "argument '" + key + "' is not finite");
      }
      if (key == "bias" || key == "scale") continue;
      std::size_t idx = arity;
      if (key.size() > 1 && key[0] == 'w') {
        try {
          std::size_t pos = 0;
          idx = std::stoul(key.substr(1), &pos);
          if (pos != key.size() - 1) idx = arity;
        } catch (const std::exception&) {
          idx = arity;
        }
      }
      if (idx >= arity) {
        throw Error(ErrorCode::InvalidEvaluatorArgs, "unknown argument '" + key + "' for linear");
      }
      weights[idx] = value;
    }
    const double bias = arg_or(args, "bias", 0.0);
    return EvaluatorFn([weights, bias](std::span<const double> in) {
      double acc = bias;
      for (std::size_t i = 0; i < in.size(); ++i) acc += weights[i] * in[i];
      return acc;
    });
  });
  r.register_kind("constant", [](const EvaluatorArgs& args, std::size_t) {
    check_args(args, {"value"}, "constant");
    const double value = arg_or(args, "value", 0.0);
    return EvaluatorFn([value](std::span<const double>) { return value; });
  });
  return r;
}

}  // namespace

const EvaluatorRegistry& EvaluatorRegistry::builtin() {
  static const EvaluatorRegistry registry = make_builtin();
  return registry;
}

void EvaluatorRegistry::register_kind(std::string kind, Factory factory) {
  factories_.insert_or_assign(std::move(kind), std::move(factory));
}

bool EvaluatorRegistry::contains(std::string_view kind) const {
  return factories_.find(kind) != factories_.end();
}

std::vector<std::string> EvaluatorRegistry::kinds() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : factories_) out.push_back(k);
  return out;
}

EvaluatorFn EvaluatorRegistry::make(const EvaluatorSpec& spec, std::size_t arity) const {
  auto it = factories_.find(spec.kind);
  if (it == factories_.end()) {
    throw Error(ErrorCode::UnknownEvaluator, "unknown evaluator kind '" + spec.kind + "'");
  }
  EvaluatorFn fn = it->second(spec.args, arity);
  auto scale = spec.args.find("scale");
  if (scale == spec.args.end() || scale->second == 1.0) return fn;
  if (!std::isfinite(scale->second)) {
    throw Error(ErrorCode::InvalidEvaluatorArgs, "argument 'scale' is not finite");
  }
  return [fn = std::move(fn), c = scale->second](std::span<const double> in) {
    return c * fn(in);
  };
}

}  // namespace cancoord
