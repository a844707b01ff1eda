#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "cancoord/model.hpp"
#include "cancoord/reference.hpp"
#include "scenario_gen.hpp"

using namespace cancoord;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected cancoord::Error");
  return ErrorCode::InvalidArgument;
}

FunctionSpec linear(std::string id, std::vector<std::string> inputs, std::string objective) {
  return {std::move(id), std::move(inputs), {std::move(objective), Direction::Maximize, ""}, {},
          {"linear", {}}};
}

std::set<Edge> edges_of(const Scenario& s) {
  return {s.graph().edges().begin(), s.graph().edges().end()};
}

}  // namespace

TEST_CASE("parameter spec invariants") {
  CHECK_NOTHROW(validate(ParameterSpec{"p", 4, 0, 10, 1}));
  CHECK_NOTHROW(validate(ParameterSpec{"p", 3, 3, 3, 1}));
  CHECK(code_of([] { validate(ParameterSpec{"p", 11, 0, 10, 1}); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { validate(ParameterSpec{"p", 4, 0, 10, 0}); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { validate(ParameterSpec{"p", 4, 0, 10, 20}); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { validate(ParameterSpec{"p", 4, 10, 0, 1}); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { validate(ParameterSpec{"", 4, 0, 10, 1}); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] {
          validate(ParameterSpec{"p", 4, 0, std::numeric_limits<double>::infinity(), 1});
        }) == ErrorCode::InvalidParameter);
}

TEST_CASE("build_scenario derives the dependency graph") {
  SUBCASE("two-function reference wiring") {
    const auto s = reference_scenario();
    const std::set<Edge> expected{{"p1", "o1"}, {"p2", "o1"}, {"p1", "o2"}, {"o1", "o2"}};
    CHECK(edges_of(s) == expected);
    CHECK(s.evaluation_order() == std::vector<std::size_t>{0, 1});
    CHECK(s.graph().nodes().size() == 4);
  }
  SUBCASE("single function with one parameter") {
    const auto s = build_scenario({{"x", 0, 0, 1, 1}}, {linear("F", {"x"}, "y")});
    CHECK(s.graph().edges() == std::vector<Edge>{{"x", "y"}});
  }
  SUBCASE("evaluation order follows dependencies, not declaration") {
    const auto s = build_scenario({{"x", 0, 0, 1, 1}},
                                  {linear("G", {"a"}, "b"), linear("F", {"x"}, "a")});
    CHECK(s.evaluation_order() == std::vector<std::size_t>{1, 0});
  }
}

TEST_CASE("build_scenario rejects invalid compositions") {
  const auto params = reference_parameters();

  SUBCASE("unknown input") {
    auto fs = reference_functions();
    fs[1].inputs = {"p1", "o3"};
    try {
      build_scenario(params, fs);
      FAIL("expected UnknownInput");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownInput);
      CHECK(e.location() == "/functions/1/inputs/1");
    }
  }
  SUBCASE("objective cycle") {
    CHECK(code_of([&] {
            build_scenario(params, {linear("F1", {"p1", "o2"}, "o1"), linear("F2", {"o1"}, "o2")});
          }) == ErrorCode::CyclicDependency);
  }
  SUBCASE("self loop") {
    CHECK(code_of([&] { build_scenario(params, {linear("F1", {"o1"}, "o1")}); }) ==
          ErrorCode::CyclicDependency);
  }
  SUBCASE("duplicate objective owner") {
    CHECK(code_of([&] {
            build_scenario(params, {linear("F1", {"p1"}, "o1"), linear("F2", {"p2"}, "o1")});
          }) == ErrorCode::DuplicateObjectiveOwner);
  }
  SUBCASE("empty function list") {
    CHECK(code_of([&] { build_scenario(params, {}); }) == ErrorCode::InvalidScenario);
  }
  SUBCASE("duplicate parameter and name clash") {
    CHECK(code_of([&] {
            build_scenario({{"p", 0, 0, 1, 1}, {"p", 0, 0, 1, 1}}, {linear("F", {"p"}, "o")});
          }) == ErrorCode::DuplicateName);
    CHECK(code_of([&] { build_scenario({{"p", 0, 0, 1, 1}}, {linear("F", {"p"}, "p")}); }) ==
          ErrorCode::DuplicateName);
  }
  SUBCASE("unknown evaluator kind and bad arity") {
    auto fs = reference_functions();
    fs[0].evaluator.kind = "spline";
    CHECK(code_of([&] { build_scenario(params, fs); }) == ErrorCode::UnknownEvaluator);
    fs = reference_functions();
    fs[0].inputs = {"p1"};
    CHECK(code_of([&] { build_scenario(params, fs); }) == ErrorCode::InvalidEvaluatorArgs);
  }
  SUBCASE("output that is not a parameter") {
    auto f = linear("F", {"p1"}, "o");
    f.outputs = {"nope"};
    CHECK(code_of([&] { build_scenario(params, {f}); }) == ErrorCode::UnknownInput);
  }
}

TEST_CASE("evaluate on the reference scenario") {
  const auto s = reference_scenario();
  const auto at = [&](double p1, double p2) {
    return evaluate(s, Configuration({{"p1", p1}, {"p2", p2}}));
  };

  CHECK(at(0, 100).at("o1") == 1.0);
  // frozen from tests/oracles/reference_values.py
  const auto d = at(4, 100);
  CHECK(d.at("o1") == doctest::Approx(0.9992003199146837).epsilon(1e-12));
  CHECK(std::abs(d.at("o1") - 0.99920) < 1e-4);
  CHECK(d.at("o2") == doctest::Approx(0.13576870241629566).epsilon(1e-12));
  CHECK(std::abs(d.at("o2") - 0.13584) < 1e-4);
  CHECK(at(6, 100).at("o2") == 1.0);
}

TEST_CASE("evaluate validates configurations") {
  const auto s = reference_scenario();
  CHECK(code_of([&] { evaluate(s, Configuration({{"p1", 4}})); }) ==
        ErrorCode::InvalidConfiguration);
  CHECK(code_of([&] { evaluate(s, Configuration({{"p1", 11}, {"p2", 100}})); }) ==
        ErrorCode::InvalidConfiguration);
  CHECK(code_of([&] { evaluate(s, Configuration({{"p1", 4}, {"p2", 100}, {"p3", 1}})); }) ==
        ErrorCode::InvalidConfiguration);
}

TEST_CASE("non-finite evaluator output is an EvaluatorFailure naming the function") {
  EvaluatorRegistry reg = EvaluatorRegistry::builtin();
  reg.register_kind("broken", [](const EvaluatorArgs&, std::size_t) {
    return EvaluatorFn([](std::span<const double> in) { return in[0] > 0 ? NAN : 1.0; });
  });
  FunctionSpec f{"Bad", {"x"}, {"o", Direction::Maximize, ""}, {}, {"broken", {}}};
  const auto s = build_scenario({{"x", 0, -1, 1, 1}}, {f}, reg);
  CHECK(evaluate(s, Configuration({{"x", 0.0}})).at("o") == 1.0);
  try {
    evaluate(s, Configuration({{"x", 1.0}}));
    FAIL("expected EvaluatorFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvaluatorFailure);
    CHECK(e.location() == "Bad");
  }
}

TEST_CASE("evaluation is deterministic and uses same-call upstream values") {
  const auto s = reference_scenario();
  for (double p1 = 0; p1 <= 10; p1 += 1) {
    for (double p2 = 50; p2 <= 300; p2 += 10) {
      const Configuration c({{"p1", p1}, {"p2", p2}});
      const auto a = evaluate(s, c);
      CHECK(a == evaluate(s, c));
      CHECK(a.at("o2") == eval_o2(p1, a.at("o1")));
    }
  }
  // p2 only reaches o2 through o1
  const auto lo = evaluate(s, Configuration({{"p1", 4}, {"p2", 50}}));
  const auto hi = evaluate(s, Configuration({{"p1", 4}, {"p2", 300}}));
  CHECK(lo.at("o2") != hi.at("o2"));
}

TEST_CASE("minimized objectives are negated in utilities") {
  FunctionSpec f{"F", {"x"}, {"cost", Direction::Minimize, ""}, {}, {"linear", {{"bias", 1}}}};
  const auto s = build_scenario({{"x", 2, 0, 4, 1}}, {f});
  const auto c = s.defaults();
  CHECK(evaluate(s, c).at("cost") == 3.0);
  CHECK(utilities(s, c) == std::vector<double>{-3.0});
}

TEST_CASE("scale argument multiplies evaluator output") {
  const auto base = reference_scenario();
  const auto scaled = reference_scenario(2.0);
  const auto c = Configuration({{"p1", 6}, {"p2", 100}});
  CHECK(evaluate(scaled, c).at("o1") == doctest::Approx(2 * evaluate(base, c).at("o1")));
}

TEST_CASE("sweep") {
  const auto s = reference_scenario();
  SUBCASE("p1 over 0..10 peaks o2 at 6") {
    std::vector<double> values;
    for (int i = 0; i <= 10; ++i) values.push_back(i);
    const auto rows = sweep(s, "p1", values, s.defaults());
    REQUIRE(rows.size() == 11);
    auto best = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return a.objectives.at("o2") < b.objectives.at("o2");
    });
    CHECK(best->value == 6);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].value == values[i]);
  }
  SUBCASE("empty value list") {
    CHECK(sweep(s, "p1", std::vector<double>{}, s.defaults()).empty());
  }
  SUBCASE("p2 over 50..300 at p1=6 has strictly increasing o1") {
    const auto grid = parameter_grid(s.parameter("p2"));
    const auto rows = sweep(s, "p2", grid, s.defaults().with("p1", 6));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double oracle = std::exp(-36.0 / (2.0 * rows[i].value * rows[i].value));
      CHECK(rows[i].objectives.at("o1") == doctest::Approx(oracle).epsilon(1e-14));
      CHECK(rows[i].objectives.at("o1") > rows[i - 1].objectives.at("o1"));
    }
  }
  SUBCASE("errors") {
    const std::vector<double> bad{11};
    CHECK(code_of([&] { sweep(s, "p1", bad, s.defaults()); }) == ErrorCode::InvalidConfiguration);
    CHECK(code_of([&] { sweep(s, "p9", bad, s.defaults()); }) == ErrorCode::UnknownName);
  }
}

TEST_CASE("parameter_grid") {
  CHECK(parameter_grid({"p1", 4, 0, 10, 1}).size() == 11);
  CHECK(parameter_grid({"c", 3, 3, 3, 1}) == std::vector<double>{3});
  const auto p2 = parameter_grid({"p2", 100, 50, 300, 10});
  REQUIRE(p2.size() == 26);
  CHECK(p2.front() == 50);
  CHECK(p2.back() == 300);
  // step that does not land on max
  CHECK(parameter_grid({"x", 0, 0, 1, 0.3}) == std::vector<double>{0, 0.3, 0.6, 0.8999999999999999, 1});
  // accumulated rounding must not drop the endpoint
  const auto fine = parameter_grid({"x", 0, 0, 1, 0.1});
  CHECK(fine.size() == 11);
  CHECK(fine.back() == 1.0);
}

TEST_CASE("property: graph edges equal reconstruction from function inputs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = testing::random_scenario(rng);
    std::set<Edge> expected;
    for (const auto& f : s.functions()) {
      for (const auto& in : f.inputs) expected.insert({in, f.objective.name});
    }
    CHECK(edges_of(s) == expected);

    // evaluation order is topological
    std::set<std::string> done;
    for (auto fi : s.evaluation_order()) {
      const auto& f = s.functions()[fi];
      for (const auto& in : f.inputs) {
        if (s.is_objective(in)) CHECK(done.count(in) == 1);
      }
      done.insert(f.objective.name);
    }
  }
}

TEST_CASE("property: any objective cycle is rejected") {
  std::mt19937_64 rng(11);
  int rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto g = testing::random_specs(rng);
    if (g.functions.size() < 2) continue;
    // close a cycle: the first function reads the last one's objective and
    // the last one reads the first one's
    auto& a = g.functions.front();
    auto& b = g.functions.back();
    if (std::find(a.inputs.begin(), a.inputs.end(), b.objective.name) == a.inputs.end()) {
      a.inputs.push_back(b.objective.name);
    }
    if (std::find(b.inputs.begin(), b.inputs.end(), a.objective.name) == b.inputs.end()) {
      b.inputs.push_back(a.objective.name);
    }
    CHECK(code_of([&] { build_scenario(g.params, g.functions); }) == ErrorCode::CyclicDependency);
    ++rejected;
  }
  CHECK(rejected > 100);
}
