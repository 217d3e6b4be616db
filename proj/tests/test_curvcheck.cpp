#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "lorcomp/cone.hpp"
#include "lorcomp/curvcheck.hpp"
#include "testutil.hpp"

using namespace lorcomp;

namespace {

FiniteLorentzSpace ds_space(int n = 20, std::uint64_t seed = 3, int midpoints = 0) {
  const AmbientSpec spec = AmbientSpec::fromTag("desitter-2", 1.0);
  Box b;
  b.ranges = {{0.0, 2.0}, {-0.5, 0.5}};
  return sprinkle(spec, b, n, seed, midpoints);
}

FiniteLorentzSpace ads_space(int n = 20, std::uint64_t seed = 5, int midpoints = 0) {
  const AmbientSpec spec = AmbientSpec::fromTag("antidesitter-2", 1.0);
  Box b;
  b.ranges = {{0.0, 1.2}, {-0.4, 0.4}};
  return sprinkle(spec, b, n, seed, midpoints);
}

FiniteLorentzSpace flat_space(int n = 20, std::uint64_t seed = 7, int midpoints = 0) {
  const AmbientSpec spec = AmbientSpec::fromTag("minkowski-2", 1.0);
  Box b;
  b.ranges = {{0.0, 2.0}, {-0.5, 0.5}};
  return sprinkle(spec, b, n, seed, midpoints);
}

}  // namespace

TEST_CASE("a collinear chain is rigid for both four-point sides") {
  const FiniteLorentzSpace sp = chain_space(4);
  const CurvatureParam p = CurvatureParam::fromK(0.0);
  for (Side side : {Side::Upper, Side::Lower}) {
    const ScanReport rep = scan_four_point(sp, p, side, 1e-7);
    CHECK(rep.enumerated == 1);
    CHECK(rep.violations == 0);
    CHECK(std::abs(rep.worstMargin) <= 1e-9);
  }
}

TEST_CASE("flat sprinkles pass both sides at the flat bound") {
  const FiniteLorentzSpace sp = flat_space();
  const CurvatureParam p = CurvatureParam::fromK(0.0);
  for (Side side : {Side::Upper, Side::Lower}) {
    const ScanReport rep = scan_four_point(sp, p, side, 1e-7);
    CHECK(rep.pass());
    CHECK(std::abs(rep.worstMargin) <= 1e-7);
  }
}

TEST_CASE("de Sitter sprinkles separate the curvature bounds") {
  const FiniteLorentzSpace sp = ds_space();
  CHECK(scan_four_point(sp, CurvatureParam::fromK(0.0), Side::Lower, 1e-7).pass());
  CHECK(scan_four_point(sp, CurvatureParam::fromK(1.0), Side::Upper, 1e-7).pass());
  const ScanReport bad = scan_four_point(sp, CurvatureParam::fromK(0.0), Side::Upper, 1e-7);
  CHECK_FALSE(bad.pass());
  CHECK(bad.worstMargin < -1e-6);
  // Cross-check the worst witness by direct evaluation.
  const auto& w = bad.worst.front();
  const QuadrupleTaus q{sp.tauAt(w.idx[0], w.idx[1]), sp.tauAt(w.idx[0], w.idx[2]),
                        sp.tauAt(w.idx[0], w.idx[3]), sp.tauAt(w.idx[1], w.idx[2]),
                        sp.tauAt(w.idx[1], w.idx[3]), sp.tauAt(w.idx[2], w.idx[3])};
  const Verdict v = four_point_upper_margin(CurvatureParam::fromK(0.0), q, 1e-7);
  CHECK(v.margins[0] == doctest::Approx(w.margin).epsilon(1e-12));
}

TEST_CASE("anti-de Sitter sprinkles separate the curvature bounds") {
  const FiniteLorentzSpace sp = ads_space();
  CHECK(scan_four_point(sp, CurvatureParam::fromK(0.0), Side::Upper, 1e-7).pass());
  CHECK(scan_four_point(sp, CurvatureParam::fromK(-1.0), Side::Lower, 1e-7).pass());
  const ScanReport bad = scan_four_point(sp, CurvatureParam::fromK(0.0), Side::Lower, 1e-7);
  CHECK_FALSE(bad.pass());
  CHECK(bad.worstMargin < -1e-6);
}

TEST_CASE("scans are deterministic across thread counts") {
  const FiniteLorentzSpace sp = ds_space(15);
  const CurvatureParam p = CurvatureParam::fromK(0.0);
  setenv("LORCOMP_THREADS", "1", 1);
  const ScanReport one = scan_four_point(sp, p, Side::Upper, 1e-7);
  setenv("LORCOMP_THREADS", "4", 1);
  const ScanReport four = scan_four_point(sp, p, Side::Upper, 1e-7);
  unsetenv("LORCOMP_THREADS");
  CHECK(one.enumerated == four.enumerated);
  CHECK(one.violations == four.violations);
  REQUIRE(one.worst.size() == four.worst.size());
  for (std::size_t i = 0; i < one.worst.size(); ++i) {
    CHECK(one.worst[i].idx == four.worst[i].idx);
    CHECK(one.worst[i].margin == four.worst[i].margin);
  }
}

TEST_CASE("size bounds are skipped with a named reason for K < 0") {
  const FiniteLorentzSpace sp = chain_space(6);  // tau up to 5 > pi
  const ScanReport rep = scan_four_point(sp, CurvatureParam::fromK(-1.0), Side::Lower, 1e-7);
  CHECK(rep.skipped > 0);
  CHECK(rep.skipReasons.count("size-bound") == 1);
  CHECK(rep.tested + rep.skipped == rep.enumerated);
}

TEST_CASE("find_eps_mu_midpoints matches the worked flat examples") {
  const AmbientSpec spec = AmbientSpec::fromTag("minkowski-2", 1.0);
  const std::vector<Vec3> pts = {
      {0.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {1.0, 0.3, 0.0}, {1.0, 0.5, 0.0}};
  const FiniteLorentzSpace sp = space_from_points(spec, pts);
  const std::vector<int> found = find_eps_mu_midpoints(sp, 0, 1, 0.5, 0.1);
  // m=(1,0) exact; m=(1,0.3) deviates by 0.0461 < 0.1; m=(1,0.5) by 0.1340.
  CHECK(found == std::vector<int>{2, 3});
  CHECK_THROWS_AS(find_eps_mu_midpoints(sp, 1, 0, 0.5, 0.1), CausalityError);
  CHECK_THROWS_AS(find_eps_mu_midpoints(sp, 0, 1, 1.5, 0.1), RangeError);
  CHECK_THROWS_AS(find_eps_mu_midpoints(sp, 0, 1, 0.5, -0.1), RangeError);
}

TEST_CASE("eps-mu scan separates the bounds on midpoint-enriched sprinkles") {
  const std::vector<double> eps = {1e-1, 1e-2, 1e-4, 1e-6};
  const std::vector<double> mus = {0.25, 0.5, 0.75};
  const FiniteLorentzSpace flat = flat_space(12, 7, 30);
  for (Side side : {Side::Upper, Side::Lower}) {
    const EpsMuReport rep =
        eps_mu_condition_scan(flat, CurvatureParam::fromK(0.0), side, eps, mus, 1e-6);
    CHECK(rep.pass);
    CHECK(rep.g.back() <= 1e-9);
  }
  const FiniteLorentzSpace ds = ds_space(12, 3, 30);
  CHECK(eps_mu_condition_scan(ds, CurvatureParam::fromK(0.0), Side::Lower, eps, mus, 1e-6).pass);
  const EpsMuReport dsBad =
      eps_mu_condition_scan(ds, CurvatureParam::fromK(0.0), Side::Upper, eps, mus, 1e-6);
  CHECK_FALSE(dsBad.pass);
  CHECK(dsBad.g.back() > 1e-3);  // violation persists as eps shrinks
  const FiniteLorentzSpace ads = ads_space(12, 5, 30);
  CHECK(eps_mu_condition_scan(ads, CurvatureParam::fromK(0.0), Side::Upper, eps, mus, 1e-6).pass);
  CHECK_FALSE(
      eps_mu_condition_scan(ads, CurvatureParam::fromK(0.0), Side::Lower, eps, mus, 1e-6).pass);
}

TEST_CASE("triangle condition check compares analytic triangles") {
  const double extent = 1.0;
  auto verts = [&](const AmbientSpec& spec) -> std::array<Vec3, 3> {
    const Vec3 x = chart_to_ambient(spec, {0.0, 0.0});
    const Vec3 y = chart_to_ambient(spec, {0.45 * extent, 0.1});
    const Vec3 z = chart_to_ambient(spec, {extent, 0.05});
    return {x, y, z};
  };
  const AmbientSpec mink = AmbientSpec::fromTag("minkowski-2", 1.0);
  for (Side side : {Side::Upper, Side::Lower}) {
    const TriangleCheckReport rep =
        triangle_condition_check(mink, verts(mink), CurvatureParam::fromK(0.0), side, 24, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.worstDeviation <= 1e-9);
  }
  const AmbientSpec ds = AmbientSpec::fromTag("desitter-2", 1.0);
  CHECK(triangle_condition_check(ds, verts(ds), CurvatureParam::fromK(1.0), Side::Upper, 24,
                                 1e-7)
            .pass);
  CHECK_FALSE(triangle_condition_check(ds, verts(ds), CurvatureParam::fromK(0.0), Side::Upper,
                                       24, 1e-7)
                  .pass);
  CHECK(triangle_condition_check(ds, verts(ds), CurvatureParam::fromK(0.0), Side::Lower, 24,
                                 1e-7)
            .pass);
  const AmbientSpec ads = AmbientSpec::fromTag("antidesitter-2", 1.0);
  CHECK(triangle_condition_check(ads, verts(ads), CurvatureParam::fromK(0.0), Side::Upper, 24,
                                 1e-7)
            .pass);
  CHECK_FALSE(triangle_condition_check(ads, verts(ads), CurvatureParam::fromK(0.0), Side::Lower,
                                       24, 1e-7)
                  .pass);
}

TEST_CASE("the cone over a hyperbolic sample is flat for both sides") {
  const H2Base base = h2_disc_base(12, 1.0, 9, false);
  const FiniteLorentzSpace cone = build_cone_space(base.metric, {0.7, 1.0, 1.4}, false);
  const CurvatureParam p = CurvatureParam::fromK(0.0);
  for (Side side : {Side::Upper, Side::Lower}) {
    const ScanReport rep = scan_four_point(cone, p, side, 1e-7);
    CHECK(rep.pass());
  }
}

TEST_CASE("margin monotonicity in K on a fixed quadruple") {
  const FiniteLorentzSpace sp = ds_space(10);
  // Build one full timelike chain quadruple.
  for (int i = 0; i < sp.n; ++i)
    for (int j = 0; j < sp.n; ++j)
      for (int k = 0; k < sp.n; ++k)
        for (int l = 0; l < sp.n; ++l) {
          if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
          if (!(sp.tauAt(i, j) > 0.0) || !(sp.tauAt(j, k) > 0.0) || !(sp.tauAt(k, l) > 0.0))
            continue;
          const QuadrupleTaus q{sp.tauAt(i, j), sp.tauAt(i, k), sp.tauAt(i, l),
                                sp.tauAt(j, k), sp.tauAt(j, l), sp.tauAt(k, l)};
          double prev = -kInf;
          for (double K : {0.0, 0.5, 1.0, 2.0}) {
            const Verdict v = four_point_upper_margin(CurvatureParam::fromK(K), q, 1e-7);
            CHECK(v.margins[0] >= prev - 1e-9);
            prev = v.margins[0];
          }
          return;  // one quadruple suffices for the spot check
        }
}
