#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>

#include "lorcomp/lorspace.hpp"
#include "testutil.hpp"

using namespace lorcomp;

namespace {
Box box_for(const AmbientSpec& spec) {
  Box b;
  if (spec.kind == AmbientSpec::Kind::AntiDeSitter2)
    b.ranges = {{0.0, 1.2}, {-0.4, 0.4}};
  else if (spec.kind == AmbientSpec::Kind::Minkowski3)
    b.ranges = {{0.0, 2.0}, {-0.5, 0.5}, {-0.5, 0.5}};
  else
    b.ranges = {{0.0, 2.0}, {-0.5, 0.5}};
  return b;
}
}  // namespace

TEST_CASE("ambient tau matches the quadric oracle on random chart pairs") {
  Rng rng(3);
  for (const char* tag : {"minkowski-2", "desitter-2", "antidesitter-2"}) {
    const AmbientSpec spec = AmbientSpec::fromTag(tag, 1.0);
    const Box b = box_for(spec);
    for (int it = 0; it < 200; ++it) {
      std::vector<double> c1, c2;
      for (const auto& r : b.ranges) {
        c1.push_back(rng.uniform(r[0], r[1]));
        c2.push_back(rng.uniform(r[0], r[1]));
      }
      const Vec3 p = chart_to_ambient(spec, c1), q = chart_to_ambient(spec, c2);
      const TauClass tc = ambient_tau(spec, p, q);
      const double want = testutil::otau(spec.curvatureK(), p, q);
      if (tc.cls == CausalClass::TimelikeFuture || tc.cls == CausalClass::TimelikePast)
        CHECK(tc.tau == doctest::Approx(want).epsilon(1e-9));
      else
        CHECK(want <= 1e-6);
    }
  }
}

TEST_CASE("sprinkles satisfy all finite-space axioms") {
  for (const char* tag : {"minkowski-2", "minkowski-3", "desitter-2", "antidesitter-2"}) {
    const AmbientSpec spec = AmbientSpec::fromTag(tag, 1.0);
    const FiniteLorentzSpace sp = sprinkle(spec, box_for(spec), 25, 42);
    const AxiomReport rep = validate_axioms(sp, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.notApplicable == std::vector<std::string>{"tau-lower-semicontinuity"});
  }
}

TEST_CASE("a perturbed tau matrix fails the reverse triangle inequality") {
  FiniteLorentzSpace sp = chain_space(4);
  sp.setTau(0, 3, 1.5);  // chain gives tau(0,3) = 3; shrink it below tau(0,1)+tau(1,3)
  const AxiomReport rep = validate_axioms(sp, 1e-9);
  CHECK_FALSE(rep.pass);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "reverse-triangle-inequality") found = true;
  CHECK(found);
}

TEST_CASE("chain spaces have tau(i,j) = j - i") {
  const FiniteLorentzSpace sp = chain_space(5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      CHECK(sp.tauAt(i, j) == doctest::Approx(double(j - i)).epsilon(1e-12));
      CHECK(sp.causalAt(i, j));
      CHECK_FALSE(sp.causalAt(j, i));
    }
}

TEST_CASE("sprinkling is deterministic in the seed") {
  const AmbientSpec spec = AmbientSpec::fromTag("desitter-2", 1.0);
  const FiniteLorentzSpace a = sprinkle(spec, box_for(spec), 15, 99);
  const FiniteLorentzSpace b = sprinkle(spec, box_for(spec), 15, 99);
  const FiniteLorentzSpace c = sprinkle(spec, box_for(spec), 15, 100);
  CHECK(a.tau == b.tau);
  CHECK(a.tau != c.tau);
}

TEST_CASE("appended midpoints are exact half-way points") {
  const AmbientSpec spec = AmbientSpec::fromTag("antidesitter-2", 1.0);
  const FiniteLorentzSpace sp = sprinkle(spec, box_for(spec), 10, 5, 24);
  CHECK(sp.n == 24);
  // Every appended point must be an exact tau-midpoint of some original pair.
  for (int m = 10; m < sp.n; ++m) {
    bool matched = false;
    for (int i = 0; i < 10 && !matched; ++i)
      for (int j = 0; j < 10 && !matched; ++j) {
        const double t = sp.tauAt(i, j);
        if (!(t > 0.0)) continue;
        if (std::abs(sp.tauAt(i, m) - 0.5 * t) < 1e-9 &&
            std::abs(sp.tauAt(m, j) - 0.5 * t) < 1e-9)
          matched = true;
      }
    CHECK(matched);
  }
}

TEST_CASE("save/load round-trips a space exactly") {
  const AmbientSpec spec = AmbientSpec::fromTag("desitter-2", 1.0);
  const FiniteLorentzSpace sp = sprinkle(spec, box_for(spec), 12, 7);
  const std::string path = "/tmp/lorcomp_test_space.json";
  save_space(sp, path);
  const FiniteLorentzSpace back = load_space(path);
  CHECK(back.n == sp.n);
  CHECK(back.tau == sp.tau);
  CHECK(back.d == sp.d);
  CHECK(back.causal == sp.causal);
  CHECK(back.ambient == sp.ambient);
  std::remove(path.c_str());
}

TEST_CASE("malformed space files raise parse errors naming the field") {
  const std::string path = "/tmp/lorcomp_test_bad.json";
  {
    FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("{\"schemaVersion\":1,\"n\":2}", f);
    std::fclose(f);
  }
  try {
    load_space(path);
    CHECK(false);
  } catch (const ParseError& pe) {
    CHECK(std::string(pe.what()).find("missing field") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("generation rejects bad parameters") {
  const AmbientSpec spec = AmbientSpec::fromTag("minkowski-2", 1.0);
  CHECK_THROWS_AS(sprinkle(spec, box_for(spec), -3, 1), GenerationError);
  Box bad;
  bad.ranges = {{1.0, 0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(sprinkle(spec, bad, 5, 1), GenerationError);
  Box wrongDim;
  wrongDim.ranges = {{0.0, 1.0}};
  CHECK_THROWS_AS(sprinkle(spec, wrongDim, 5, 1), GenerationError);
}

TEST_CASE("ambient exp/log are mutually inverse") {
  Rng rng(8);
  for (const char* tag : {"minkowski-2", "desitter-2", "antidesitter-2"}) {
    const AmbientSpec spec = AmbientSpec::fromTag(tag, 1.0);
    const Box b = box_for(spec);
    for (int it = 0; it < 50; ++it) {
      std::vector<double> c1;
      for (const auto& r : b.ranges) c1.push_back(rng.uniform(r[0], r[1]));
      const Vec3 p = chart_to_ambient(spec, c1);
      // Shoot a geodesic and invert it with the unit tangent.
      const double T = rng.uniform(0.05, 0.5);
      std::vector<double> c2 = c1;
      c2[0] += T;  // strictly later chart time at the same spatial point
      const Vec3 q = chart_to_ambient(spec, c2);
      const TauClass tc = ambient_tau(spec, p, q);
      REQUIRE(tc.cls == CausalClass::TimelikeFuture);
      const Vec3 u = ambient_unit_tangent(spec, p, q);
      const Vec3 back = ambient_exp(spec, p, u, tc.tau);
      for (int k = 0; k < 3; ++k) CHECK(back[k] == doctest::Approx(q[k]).epsilon(1e-9));
    }
  }
}
