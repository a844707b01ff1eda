#include <doctest.h>

#include <cmath>
#include <random>

#include "cancoord/reference.hpp"
#include "cancoord/scenario_json.hpp"

using namespace cancoord;

TEST_CASE("eval_o1") {
  CHECK(eval_o1(0, 100) == 1.0);
  CHECK(eval_o1(4, 100) == doctest::Approx(std::exp(-16.0 / 20000.0)).epsilon(1e-15));
  CHECK(std::abs(eval_o1(4, 100) - 0.999200) < 1e-6);
  CHECK(eval_o1(-4, 100) == eval_o1(4, 100));
  try {
    eval_o1(1, 0);
    FAIL("expected ZeroWidth");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroWidth);
  }
}

TEST_CASE("eval_o2") {
  CHECK(eval_o2(6, 0.3) == 1.0);
  CHECK(eval_o2(6, -7.5) == 1.0);
  // exp(-4 * 0.999200^2 / 2), frozen from the scalar oracle
  CHECK(eval_o2(4, 0.999200) == doctest::Approx(0.13576887601505028).epsilon(1e-12));
  CHECK(std::abs(eval_o2(4, 0.999200) - 0.13584) < 1e-4);
  CHECK(eval_o2(-3, 0.0) == 1.0);
  CHECK_THROWS_AS(eval_o2(NAN, 1.0), Error);
  CHECK_THROWS_AS(eval_o2(1.0, INFINITY), Error);
}

TEST_CASE("property: range, symmetry and monotonicity of o1") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> p1d(-50, 50), p2d(5, 400);  // exponent stays above exp underflow
  for (int i = 0; i < 5000; ++i) {
    const double p1 = p1d(rng), p2 = p2d(rng);
    const double v = eval_o1(p1, p2);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    CHECK(eval_o1(-p1, p2) == v);
    CHECK(eval_o1(p1, -p2) == v);
    // strictly increasing in |p2|, strictly decreasing in |p1|; skipped where
    // v is within rounding of 1
    if (v < 1.0 - 1e-9) {
      CHECK(eval_o1(p1, p2 * 1.01) > v);
      CHECK(eval_o1(p1 * 1.01, p2) < v);
    }
  }
}

TEST_CASE("property: range and peak of o2") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> p1d(-20, 20), o1d(1e-3, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double o1 = o1d(rng);
    const double v = eval_o2(p1d(rng), o1);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    // unique maximizer at 6 on a fine scan
    double best_x = 0, best_v = -1;
    for (int k = 0; k <= 2000; ++k) {
      const double x = -4.0 + k * 0.01;
      const double y = eval_o2(x, o1);
      if (y > best_v) {
        best_v = y;
        best_x = x;
      }
    }
    CHECK(best_x == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(eval_o2(6.0 + 1e-3, o1) < 1.0);
  }
}

TEST_CASE("property: product form agrees with the nested-fraction form") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> p1d(-10, 20);
  std::uniform_real_distribution<double> logo1(std::log(1e-6), 0.0);
  for (int i = 0; i < 20000; ++i) {
    const double p1 = p1d(rng);
    const double o1 = std::exp(logo1(rng));
    const double literal = std::exp(-((p1 - 6) * (p1 - 6)) / (2.0 / (o1 * o1)));
    CHECK(std::abs(eval_o2(p1, o1) - literal) <= 1e-12);
  }
}

TEST_CASE("reference scenario") {
  const auto s = reference_scenario();
  REQUIRE(s.parameters().size() == 2);
  CHECK(s.parameter("p1") == ParameterSpec{"p1", 4, 0, 10, 1});
  CHECK(s.parameter("p2") == ParameterSpec{"p2", 100, 50, 300, 10});
  for (const auto& o : s.objectives()) CHECK(o.direction == Direction::Maximize);

  const auto v = evaluate(s, s.defaults());
  CHECK(std::abs(v.at("o1") - 0.99920) < 1e-4);
  CHECK(std::abs(v.at("o2") - 0.13584) < 1e-4);

  const std::vector<Edge> edges{{"o1", "o2"}, {"p1", "o1"}, {"p1", "o2"}, {"p2", "o1"}};
  CHECK(s.graph().edges() == edges);

  const auto round = scenario_from_json(nlohmann::json::parse(to_json(s).dump()));
  CHECK(round.parameters() == s.parameters());
  CHECK(round.functions() == s.functions());
}
