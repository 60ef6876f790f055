#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "asymdlms/algorithms.hpp"
#include "asymdlms/rng.hpp"
#include "asymdlms/signals.hpp"
#include "asymdlms/topology.hpp"

using namespace asymdlms;

namespace {

CombinationMatrix pair_average() {
  CombinationMatrix c;
  c.node_count = 2;
  c.weights = {0.5, 0.5, 0.5, 0.5};
  return c;
}

}  // namespace

TEST_SUITE("algorithms") {

TEST_CASE("names round-trip") {
  for (Algorithm alg : {Algorithm::dlms, Algorithm::dselms, Algorithm::dllad,
                        Algorithm::dllclms, Algorithm::dqqclms, Algorithm::dleclms}) {
    REQUIRE(algorithm_from_name(algorithm_name(alg)).has_value());
    CHECK(*algorithm_from_name(algorithm_name(alg)) == alg);
  }
  CHECK(!algorithm_from_name("dlms").has_value());
  CHECK(!algorithm_from_name("LMS").has_value());
  CHECK(!is_asymmetric(Algorithm::dlms));
  CHECK(!is_asymmetric(Algorithm::dselms));
  CHECK(!is_asymmetric(Algorithm::dllad));
  CHECK(is_asymmetric(Algorithm::dllclms));
  CHECK(is_asymmetric(Algorithm::dqqclms));
  CHECK(is_asymmetric(Algorithm::dleclms));
}

TEST_CASE("algorithm parameter validation") {
  CHECK_THROWS_WITH(validate(AlgorithmSpec{Algorithm::dlms, 0.0}), "mu must be positive");
  CHECK_THROWS_WITH(validate(AlgorithmSpec{Algorithm::dqqclms, 0.4, -0.8, 6.0}),
                    "a must be positive");
  CHECK_THROWS_WITH(validate(AlgorithmSpec{Algorithm::dqqclms, 0.4, 0.8, 0.0}),
                    "b must be positive");
  CHECK_THROWS_WITH(validate(AlgorithmSpec{Algorithm::dleclms, 0.4, 0.32, 6.0, -1.0}),
                    "clamp must be positive");
  CHECK_NOTHROW(validate(AlgorithmSpec{Algorithm::dleclms, 0.4, 0.32, 6.0}));
}

TEST_CASE("piecewise linear cost") {
  CHECK(cost_llc(2.0, 0.8, 4.0) == 0.8 * 2.0);
  CHECK(cost_llc(-2.0, 0.8, 4.0) == 4.0 * 2.0);
  CHECK(cost_llc(0.0, 0.8, 4.0) == 0.0);
  CHECK(!std::signbit(cost_llc(0.0, 0.8, 4.0)));
  CHECK(cost_llc(1e-12, 0.8, 4.0) == doctest::Approx(0.8e-12));
}

TEST_CASE("piecewise quadratic cost") {
  CHECK(cost_qqc(3.0, 0.8, 6.0) == 0.5 * 0.8 * 3.0 * 3.0);
  CHECK(cost_qqc(-3.0, 0.8, 6.0) == 0.5 * 6.0 * -3.0 * -3.0);
  CHECK(cost_qqc(0.0, 0.8, 6.0) == 0.0);
}

TEST_CASE("linear exponential cost against the frozen oracle") {
  // High-precision reference values, frozen.
  CHECK(cost_lec(1.0, 0.32, 6.0) == doctest::Approx(0.342766586015743).epsilon(1e-13));
  CHECK(cost_lec(-1.0, 0.32, 6.0) == doctest::Approx(0.276894222442146).epsilon(1e-13));
  CHECK(cost_lec(0.0, 0.32, 6.0) == 0.0);
  // Saturation: the cost plateaus at the clamp point.
  CHECK(cost_lec(1e6, 0.32, 6.0, 4.0) == cost_lec(4.0 / 0.32, 0.32, 6.0, 4.0));
  CHECK(cost_lec(-1e6, 0.32, 6.0, 4.0) == cost_lec(-4.0 / 0.32, 0.32, 6.0, 4.0));
  CHECK(cost_lec(1e6, 0.32, 6.0, 4.0) > 0.0);
  CHECK(cost_lec(-1e6, 0.32, 6.0, 4.0) > 0.0);
}

TEST_CASE("update factors, exact forms") {
  const AlgorithmSpec dlms{Algorithm::dlms, 0.35};
  CHECK(update_factor(dlms, 1.5) == 0.35 * 1.5);
  CHECK(update_factor(dlms, -1.5) == 0.35 * -1.5);

  const AlgorithmSpec dselms{Algorithm::dselms, 0.35};
  CHECK(update_factor(dselms, 7.0) == 0.35);
  CHECK(update_factor(dselms, -7.0) == -0.35);
  CHECK(update_factor(dselms, 0.0) == 0.0);

  const AlgorithmSpec dllad{Algorithm::dllad, 0.35};
  CHECK(update_factor(dllad, 3.0) == 0.35 * (3.0 / 4.0));
  CHECK(update_factor(dllad, -3.0) == 0.35 * (-3.0 / 4.0));
  CHECK(std::abs(update_factor(dllad, 1e9)) < 0.35 + 1e-12);

  const AlgorithmSpec dllclms{Algorithm::dllclms, 0.4, 0.8, 4.0};
  CHECK(update_factor(dllclms, 0.01) == 0.4 * 0.8);
  CHECK(update_factor(dllclms, -0.01) == -(0.4 * 4.0));
  CHECK(update_factor(dllclms, 0.0) == 0.0);

  const AlgorithmSpec dqqclms{Algorithm::dqqclms, 0.4, 0.8, 6.0};
  CHECK(update_factor(dqqclms, 2.0) == (0.4 * 0.8) * 2.0);
  CHECK(update_factor(dqqclms, -2.0) == (0.4 * 6.0) * -2.0);
  CHECK(update_factor(dqqclms, 0.0) == 0.0);

  // Frozen oracle values for the exponential update at mu=0.4, a=0.32, b=6.
  const AlgorithmSpec dleclms{Algorithm::dleclms, 0.4, 0.32, 6.0};
  CHECK(update_factor(dleclms, 1.0) == doctest::Approx(0.289634123010015).epsilon(1e-13));
  CHECK(update_factor(dleclms, -1.0) == doctest::Approx(-0.210317539527405).epsilon(1e-13));
  CHECK(update_factor(dleclms, 0.0) == 0.0);
}

TEST_CASE("exponential clamp fires and is counted") {
  const AlgorithmSpec spec{Algorithm::dleclms, 0.4, 0.32, 6.0, 4.0};
  long events = 0;
  const double saturated = update_factor(spec, 1e9, &events);
  CHECK(events == 1);
  CHECK(saturated == (0.4 * 0.32 * 6.0) * std::expm1(4.0));
  CHECK(update_factor(spec, -1e9, &events) == (0.4 * 0.32 * 6.0) * std::expm1(-4.0));
  CHECK(events == 2);
  update_factor(spec, 0.5, &events);
  CHECK(events == 2);
}

TEST_CASE("linearization error of the exponential update") {
  // expm1(0.032) - 0.032, frozen high-precision reference.
  CHECK(lec_linearization_error(0.1, 0.32) ==
        doctest::Approx(5.17505305118420e-4).epsilon(1e-12));
  CHECK(lec_linearization_error(0.0, 0.32) == 0.0);
  for (double e : {-0.5, -0.1, 0.1, 0.5})
    CHECK(lec_linearization_error(e, 0.32) > 0.0);
}

TEST_CASE("symmetric cut-offs collapse to the symmetric algorithms bitwise") {
  // c = 2 keeps mu * c exactly representable, so the reduced and direct
  // trajectories must agree to the last bit, not merely within tolerance.
  const double c = 2.0;
  const AlgorithmSpec llc{Algorithm::dllclms, 0.175, c, c};
  const AlgorithmSpec se{Algorithm::dselms, 0.175 * c};
  const AlgorithmSpec qqc{Algorithm::dqqclms, 0.175, c, c};
  const AlgorithmSpec lms{Algorithm::dlms, 0.175 * c};

  RngStream rng = RngStream::derive(5, Draw::noise, 0, 0, 0);
  for (int i = 0; i < 1000; ++i) {
    const double e = 3.0 * rng.next_normal();
    CHECK(update_factor(llc, e) == update_factor(se, e));
    CHECK(update_factor(qqc, e) == update_factor(lms, e));
  }
}

TEST_CASE("adapt, hand-worked step") {
  const AlgorithmSpec spec{Algorithm::dlms, 0.5};
  const std::vector<double> w{0.0, 0.0, 0.0};
  const std::vector<double> x{1.0, 0.0, 0.0};
  std::vector<double> phi(3);
  double error = 0.0;
  adapt(spec, w, x, 1.0, phi, &error);
  CHECK(error == 1.0);
  CHECK(phi == std::vector<double>{0.5, 0.0, 0.0});

  const std::vector<double> w2{0.25, -0.5, 1.0};
  const std::vector<double> x2{2.0, 1.0, -1.0};
  adapt(spec, w2, x2, 0.0, phi, &error);
  // e = 0 - (0.5 - 0.5 - 1.0) = 1.0; phi = w + 0.5 * 1.0 * x.
  CHECK(error == 1.0);
  CHECK(phi == std::vector<double>{1.25, 0.0, 0.5});
}

TEST_CASE("combine averages neighborhoods and skips zero weights") {
  const CombinationMatrix c = pair_average();
  const std::vector<double> phi{1.0, 3.0, -2.0, 5.0};
  std::vector<double> est(4);
  combine(c, phi, 2, est);
  CHECK(est == std::vector<double>{-0.5, 4.0, -0.5, 4.0});

  // A zero combination weight must mask even a non-finite intermediate.
  CombinationMatrix isolate;
  isolate.node_count = 2;
  isolate.weights = {1.0, 0.0, 0.0, 1.0};
  const std::vector<double> poisoned{1.0, 2.0,
                                     std::numeric_limits<double>::quiet_NaN(), 4.0};
  combine(isolate, poisoned, 2, est);
  CHECK(est[0] == 1.0);
  CHECK(est[1] == 2.0);
  CHECK(std::isnan(est[2]));

  std::vector<double> wrong(6);
  CHECK_THROWS_AS(combine(c, phi, 3, wrong), std::invalid_argument);
}

TEST_CASE("diffusion iteration reports divergence") {
  NetworkState state(2, 2);
  const CombinationMatrix c = pair_average();
  const AlgorithmSpec spec{Algorithm::dlms, 0.5};
  const std::vector<double> x{1.0, 0.0, 1.0, 0.0};
  std::vector<double> errors(2);

  const std::vector<double> fine{1.0, 1.0};
  CHECK(atc_iteration(state, c, spec, x, fine, errors) == TrialStatus::ok);
  CHECK(errors[0] == 1.0);

  const std::vector<double> infinite{std::numeric_limits<double>::infinity(), 1.0};
  CHECK(atc_iteration(state, c, spec, x, infinite, errors) == TrialStatus::diverged);
}

TEST_CASE("step-size bounds") {
  const StabilityBound lms = step_bound({Algorithm::dlms, 0.35}, 1.25);
  CHECK(*lms.mu_max_positive_branch == 2.0 / 1.25);
  CHECK(*lms.mu_max_negative_branch == 2.0 / 1.25);

  const StabilityBound qqc = step_bound({Algorithm::dqqclms, 0.4, 0.8, 6.0}, 1.0);
  CHECK(*qqc.mu_max_positive_branch == 2.5);
  CHECK(*qqc.mu_max_negative_branch == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const StabilityBound lec = step_bound({Algorithm::dleclms, 0.4, 0.32, 6.0}, 1.0);
  CHECK(*lec.mu_max_positive_branch == doctest::Approx(3.255208333333333).epsilon(1e-13));
  CHECK(*lec.mu_max_negative_branch == *lec.mu_max_positive_branch);

  const double chi = chi_v_gaussian(0.1);
  const StabilityBound llc = step_bound({Algorithm::dllclms, 0.4, 0.8, 4.0}, 1.5, chi);
  CHECK(*llc.mu_max_positive_branch == doctest::Approx(2.0 / (0.8 * chi * 1.5)).epsilon(1e-14));
  CHECK(*llc.mu_max_negative_branch == doctest::Approx(2.0 / (4.0 * chi * 1.5)).epsilon(1e-14));
  CHECK(*llc.chi_v == chi);
  CHECK_THROWS_WITH(step_bound({Algorithm::dllclms, 0.4, 0.8, 4.0}, 1.5),
                    "chi_v required for the DLLCLMS bound");

  const StabilityBound se = step_bound({Algorithm::dselms, 0.35}, 1.0);
  CHECK(!se.mu_max_positive_branch.has_value());
  CHECK(!se.mu_max_negative_branch.has_value());
  const StabilityBound ad = step_bound({Algorithm::dllad, 0.35}, 1.0);
  CHECK(!ad.mu_max_positive_branch.has_value());

  CHECK_THROWS_AS(step_bound({Algorithm::dlms, 0.35}, 0.0), std::invalid_argument);
}

TEST_CASE("noise bound factors") {
  const double root = std::sqrt(2.0 / 3.141592653589793238462643383279502884);
  CHECK(chi_v_gaussian(0.1) == doctest::Approx(root / 0.1).epsilon(1e-14));
  CHECK(chi_v_impulsive(0.1, 0.0, 100.0) == doctest::Approx(root / 0.1).epsilon(1e-14));
  const double expected =
      root * (0.99 / 0.1 + 0.01 / (std::sqrt(100.0) * 0.1));
  CHECK(chi_v_impulsive(0.1, 0.01, 100.0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK_THROWS_AS(chi_v_gaussian(0.0), std::invalid_argument);
}

TEST_CASE("update factor carries the error sign") {
  // 10^4 random (e, a, b) triples, every algorithm.
  RngStream rng = RngStream::derive(31, Draw::noise, 0, 0, 0);
  for (int i = 0; i < 10000; ++i) {
    const double e = 5.0 * rng.next_normal();
    const double a = 0.05 + rng.next_unit() * 4.0;
    const double b = 0.05 + rng.next_unit() * 8.0;
    for (Algorithm alg : {Algorithm::dlms, Algorithm::dselms, Algorithm::dllad,
                          Algorithm::dllclms, Algorithm::dqqclms, Algorithm::dleclms}) {
      const AlgorithmSpec spec{alg, 0.4, a, b};
      const double f = update_factor(spec, e);
      if (e > 0.0) CHECK(f > 0.0);
      if (e < 0.0) CHECK(f < 0.0);
      if (e == 0.0) CHECK(f == 0.0);
    }
  }
}

TEST_CASE("asymmetry ratio follows a over b") {
  // For mirrored errors the magnitude ratio |f(e)| / |f(-e)| is pinned by
  // (a, b): a/b for the piecewise families, monotone in e for the exponential.
  RngStream rng = RngStream::derive(37, Draw::noise, 0, 0, 0);
  for (int i = 0; i < 10000; ++i) {
    const double e = 1e-3 + 3.0 * rng.next_unit();
    const double a = 0.05 + rng.next_unit() * 4.0;
    const double b = 0.05 + rng.next_unit() * 8.0;
    const AlgorithmSpec llc{Algorithm::dllclms, 0.4, a, b};
    const AlgorithmSpec qqc{Algorithm::dqqclms, 0.4, a, b};
    CHECK(update_factor(llc, e) / -update_factor(llc, -e) ==
          doctest::Approx(a / b).epsilon(1e-12));
    CHECK(update_factor(qqc, e) / -update_factor(qqc, -e) ==
          doctest::Approx(a / b).epsilon(1e-12));
    // The exponential family penalizes positive errors harder for any a, b.
    const AlgorithmSpec lec{Algorithm::dleclms, 0.4, a, b};
    CHECK(update_factor(lec, e) > -update_factor(lec, -e));
  }
}

TEST_CASE("two-node network, one hand-checked diffusion step") {
  NetworkState state(2, 1);
  state.estimates = {0.0, 1.0};
  const CombinationMatrix c = pair_average();
  const AlgorithmSpec spec{Algorithm::dselms, 0.25};
  const std::vector<double> x{1.0, 1.0};
  const std::vector<double> d{2.0, 0.5};
  std::vector<double> errors(2);
  REQUIRE(atc_iteration(state, c, spec, x, d, errors) == TrialStatus::ok);
  // Node 0: e = 2 > 0, phi = 0 + 0.25. Node 1: e = -0.5, phi = 1 - 0.25.
  CHECK(errors[0] == 2.0);
  CHECK(errors[1] == -0.5);
  CHECK(state.estimates[0] == 0.5 * (0.25 + 0.75));
  CHECK(state.estimates[1] == 0.5);
}

}  // TEST_SUITE
