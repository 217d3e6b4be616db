#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lorcomp/directions.hpp"
#include "testutil.hpp"

using namespace lorcomp;

TEST_CASE("flat angle grid is constant and exact") {
  const AmbientSpec spec = AmbientSpec::fromTag("minkowski-2", 1.0);
  const DirectionSample d1 = boost_direction(spec, 0.0);
  const DirectionSample d2 = boost_direction(spec, 1.0);
  const AngleGrid g = angle_estimate(d1, d2);
  CHECK(g.estimate == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < g.grid.size(); ++i)
    for (std::size_t j = 0; j < g.grid.size(); ++j) {
      const double th = g.at(static_cast<int>(i), static_cast<int>(j));
      if (!std::isnan(th)) CHECK(th == doctest::Approx(1.0).epsilon(1e-12));
    }
  CHECK(angle_estimate(d1, d1).estimate == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("curved angle estimates converge to the smooth angle") {
  for (const char* tag : {"desitter-2", "antidesitter-2"}) {
    const AmbientSpec spec = AmbientSpec::fromTag(tag, 1.0);
    const DirectionSample d1 = boost_direction(spec, 0.0);
    const DirectionSample d2 = boost_direction(spec, 0.7);
    CHECK(smooth_angle(d1, d2) == doctest::Approx(0.7).epsilon(1e-12));
    const AngleGrid g = angle_estimate(d1, d2);
    CHECK(std::abs(g.estimate - 0.7) <= 1e-4);
  }
}

TEST_CASE("theta monotonicity orientation separates the model spaces") {
  const GridSpec grid{};
  auto run = [&](const char* tag, Side side) {
    const AmbientSpec spec = AmbientSpec::fromTag(tag, 1.0);
    return theta_monotonicity(boost_direction(spec, 0.0), boost_direction(spec, 0.7), grid,
                              side);
  };
  CHECK(run("minkowski-2", Side::Upper).pass);
  CHECK(run("minkowski-2", Side::Lower).pass);
  CHECK(run("antidesitter-2", Side::Upper).pass);
  CHECK_FALSE(run("antidesitter-2", Side::Lower).pass);
  CHECK(run("desitter-2", Side::Lower).pass);
  CHECK_FALSE(run("desitter-2", Side::Upper).pass);
}

TEST_CASE("direction midpoint halves the angle in minkowski-3") {
  const AmbientSpec spec = AmbientSpec::fromTag("minkowski-3", 1.0);
  const DirectionSample d1 = boost_direction(spec, 0.5, 0.0);
  const DirectionSample d2 = boost_direction(spec, 0.5, kPi / 2.0);
  const double omega = smooth_angle(d1, d2);
  const MidpointResult res = direction_midpoint(d1, d2, 1e-3);
  CHECK(std::abs(res.angle1 - 0.5 * omega) <= 1e-3);
  CHECK(std::abs(res.angle2 - 0.5 * omega) <= 1e-3);
  CHECK(std::abs(smooth_angle(d1, res.m) - 0.5 * omega) <= 2e-3);
}

TEST_CASE("log and exp maps invert each other") {
  for (const char* tag : {"minkowski-2", "desitter-2", "antidesitter-2"}) {
    const AmbientSpec spec = AmbientSpec::fromTag(tag, 1.0);
    const DirectionSample d = boost_direction(spec, 0.4);
    const Vec3 x = exp_map(d, 0.8);
    const auto [r, back] = log_map(spec, d.p, x);
    CHECK(r == doctest::Approx(0.8).epsilon(1e-9));
    for (int k = 0; k < 3; ++k) CHECK(back.u[k] == doctest::Approx(d.u[k]).epsilon(1e-9));
  }
  const AmbientSpec spec = AmbientSpec::fromTag("minkowski-2", 1.0);
  CHECK_THROWS_AS(log_map(spec, Vec3{0.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}), CausalityError);
  CHECK_THROWS_AS(exp_map(boost_direction(spec, 0.0), -0.5), RangeError);
}

TEST_CASE("flat chronology threshold flips exactly at e^-omega") {
  const AmbientSpec spec = AmbientSpec::fromTag("minkowski-2", 1.0);
  for (double omega : {0.25, 0.5, 1.0, 2.0}) {
    const DirectionSample d1 = boost_direction(spec, 0.0);
    const DirectionSample d2 = boost_direction(spec, omega);
    const double flip = threshold_flip(d1, d2, 1.0);
    CHECK(flip == doctest::Approx(std::exp(-omega)).epsilon(1e-9));
    CHECK(chronology_threshold(d1, d2, flip - 1e-6, 1.0));
    CHECK_FALSE(chronology_threshold(d1, d2, flip + 1e-6, 1.0));
  }
}

TEST_CASE("de Sitter threshold converges to the flat law at small t") {
  const AmbientSpec spec = AmbientSpec::fromTag("desitter-2", 1.0);
  const double omega = 0.7;
  const DirectionSample d1 = boost_direction(spec, 0.0);
  const DirectionSample d2 = boost_direction(spec, omega);
  CHECK(std::abs(threshold_flip(d1, d2, 1e-3) - std::exp(-omega)) <= 1e-3);
}

TEST_CASE("blow-up table converges to the tangent cone and is flat") {
  const AmbientSpec spec = AmbientSpec::fromTag("desitter-2", 1.0);
  const Vec3 p = ambient_origin(spec);
  const std::vector<std::pair<double, DirectionSample>> items = {
      {0.5, boost_direction(spec, 0.0)},
      {1.0, boost_direction(spec, 0.2)},
      {2.0, boost_direction(spec, 0.35)},
      {4.0, boost_direction(spec, 0.5)}};
  std::vector<double> lambdas;
  for (int k = 1; k <= 10; ++k) lambdas.push_back(std::ldexp(1.0, -k));
  const BlowupTable tab = blowup_table(p, items, lambdas);
  REQUIRE(tab.pairs.size() == 6);
  for (double e : tab.finestError) CHECK(e <= 1e-4);
  // Errors strictly decrease along the lambda schedule for each pair.
  for (std::size_t k = 0; k < tab.pairs.size(); ++k)
    for (std::size_t l = 1; l < tab.lambdas.size(); ++l) {
      const double prev = std::abs(tab.values[l - 1][k] - tab.reference[k]);
      const double cur = std::abs(tab.values[l][k] - tab.reference[k]);
      CHECK(cur < prev + 1e-15);
    }
  CHECK(tab.coneChain);
  for (double m : tab.chainMargins) CHECK(m >= -1e-7);
}

TEST_CASE("flat blow-up is exact at every scale") {
  const AmbientSpec spec = AmbientSpec::fromTag("minkowski-2", 1.0);
  const std::vector<std::pair<double, DirectionSample>> items = {
      {1.0, boost_direction(spec, 0.0)}, {2.0, boost_direction(spec, 0.4)}};
  const BlowupTable tab = blowup_table(ambient_origin(spec), items, {0.5, 0.25, 0.125});
  for (const auto& row : tab.values)
    for (std::size_t k = 0; k < row.size(); ++k)
      CHECK(row[k] == doctest::Approx(tab.reference[k]).epsilon(1e-12));
}

TEST_CASE("midpoint sequence is Cauchy with a geometric rate") {
  const AmbientSpec spec = AmbientSpec::fromTag("minkowski-3", 1.0);
  const DirectionSample d1 = boost_direction(spec, 0.5, 0.0);
  const DirectionSample d2 = boost_direction(spec, 0.5, kPi / 2.0);
  std::vector<DirectionSample> mids;
  for (int k = 1; k <= 10; ++k)
    mids.push_back(direction_midpoint(d1, d2, std::ldexp(1.0, -k)).m);
  std::vector<double> gaps;
  for (std::size_t k = 1; k < mids.size(); ++k)
    gaps.push_back(smooth_angle(mids[k - 1], mids[k]));
  // Successive gaps must shrink overall and end below the finest eps.
  CHECK(gaps.back() <= std::ldexp(1.0, -10));
  double logSum = 0.0;
  int terms = 0;
  for (std::size_t k = 1; k < gaps.size(); ++k)
    if (gaps[k] > 1e-15 && gaps[k - 1] > 1e-15) {
      logSum += std::log(gaps[k] / gaps[k - 1]);
      ++terms;
    }
  if (terms > 0) CHECK(std::exp(logSum / terms) < 1.0);  // fitted geometric rate
}

TEST_CASE("invalid directions are rejected") {
  const AmbientSpec spec = AmbientSpec::fromTag("desitter-2", 1.0);
  DirectionSample d = boost_direction(spec, 0.3);
  d.u[0] = -d.u[0];  // past-directed
  CHECK_THROWS_AS(check_direction(d), CausalityError);
  DirectionSample n = boost_direction(spec, 0.3);
  n.u = 2.0 * n.u;  // not unit
  CHECK_THROWS_AS(check_direction(n), InvalidPointError);
}
