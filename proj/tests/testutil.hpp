#ifndef LORCOMP_TESTS_TESTUTIL_HPP_
#define LORCOMP_TESTS_TESTUTIL_HPP_

// Self-contained reference implementations used as oracles by the tests.
// Everything here is written directly from the quadric-model definitions and
// deliberately avoids the closed forms used by the library.

#include <cmath>
#include <stdexcept>

#include "lorcomp/common.hpp"

namespace testutil {

using lorcomp::Vec3;
using lorcomp::operator+;
using lorcomp::operator-;
using lorcomp::operator*;

// Ambient bilinear form of the quadric model for curvature K (flat for K=0).
inline double oform(double K, const Vec3& u, const Vec3& v) {
  if (K > 0.0) return u[0] * v[0] - u[1] * v[1] - u[2] * v[2];
  if (K < 0.0) return u[0] * v[0] + u[1] * v[1] - u[2] * v[2];
  return u[0] * v[0] - u[1] * v[1] - u[2] * v[2];  // Minkowski (t, x, 0)
}

inline double oscale(double K) { return K == 0.0 ? 1.0 : 1.0 / std::sqrt(std::abs(K)); }

inline Vec3 oorigin(double K) {
  const double s = oscale(K);
  if (K > 0.0) return {0.0, s, 0.0};
  if (K < 0.0) return {s, 0.0, 0.0};
  return {0.0, 0.0, 0.0};
}

inline Vec3 oaxis(double K) {
  if (K > 0.0) return {1.0, 0.0, 0.0};
  if (K < 0.0) return {0.0, 1.0, 0.0};
  return {1.0, 0.0, 0.0};
}

inline Vec3 ospace(double K) {
  if (K == 0.0) return {0.0, 1.0, 0.0};
  return {0.0, 0.0, 1.0};
}

// Unit-speed timelike geodesic from p with unit tangent u, and its velocity.
inline Vec3 ogeo(double K, const Vec3& p, const Vec3& u, double T) {
  const double s = oscale(K);
  if (K > 0.0) return std::cosh(T / s) * p + (s * std::sinh(T / s)) * u;
  if (K < 0.0) return std::cos(T / s) * p + (s * std::sin(T / s)) * u;
  return p + T * u;
}

inline Vec3 ogeoVel(double K, const Vec3& p, const Vec3& u, double T) {
  const double s = oscale(K);
  if (K > 0.0) return (std::sinh(T / s) / s) * p + std::cosh(T / s) * u;
  if (K < 0.0) return (-std::sin(T / s) / s) * p + std::cos(T / s) * u;
  return u;
}

// Magnitude of the time separation between p and q; 0 if not timelike.
inline double otau(double K, const Vec3& p, const Vec3& q) {
  const double s = oscale(K);
  if (K > 0.0) {
    const double w = -oform(K, p, q) / (s * s);
    return w > 1.0 ? s * std::acosh(w) : 0.0;
  }
  if (K < 0.0) {
    const double w = oform(K, p, q) / (s * s);
    return std::abs(w) < 1.0 ? s * std::acos(w) : 0.0;
  }
  const Vec3 d = q - p;
  const double q2 = oform(K, d, d);
  return q2 > 0.0 ? std::sqrt(q2) : 0.0;
}

// Unit future tangent at p toward a later axis-frame-free target q of
// separation tau (inverts the geodesic formula).
inline Vec3 otangent(double K, const Vec3& p, const Vec3& q, double tau) {
  const double s = oscale(K);
  if (K > 0.0) return (1.0 / (s * std::sinh(tau / s))) * (q - std::cosh(tau / s) * p);
  if (K < 0.0) return (1.0 / (s * std::sin(tau / s))) * (q - std::cos(tau / s) * p);
  return (1.0 / tau) * (q - p);
}

struct OracleTriangle {
  Vec3 x, y, z;
  double boost = 0.0;  // rapidity of the x->z tangent against the axis
};

// Realize the triangle with tau sides t12=a (x,y), t23=b (y,z), t13=c (x,z)
// by bisecting the rapidity at the past vertex x.
inline OracleTriangle orealize(double K, double a, double b, double c) {
  const Vec3 x = oorigin(K);
  const Vec3 u0 = oaxis(K), e = ospace(K);
  const Vec3 y = ogeo(K, x, u0, a);
  auto zOf = [&](double w) {
    const Vec3 u = std::cosh(w) * u0 + std::sinh(w) * e;
    return ogeo(K, x, u, c);
  };
  auto f = [&](double w) { return otau(K, y, zOf(w)); };  // decreasing in w
  double lo = 0.0, hi = 1.0;
  while (f(hi) > b && hi < 60.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > b ? lo : hi) = mid;
  }
  const double w = 0.5 * (lo + hi);
  OracleTriangle tri{x, y, zOf(w), w};
  return tri;
}

// Comparison angle oracle: hyperbolic angle between the future-directed
// velocities of the two sides meeting at the requested vertex (0=X, 1=Y,
// 2=Z), with sides continued through the vertex where needed.
inline double oangle(double K, double a, double b, double c, int vertex) {
  const OracleTriangle tri = orealize(K, a, b, c);
  const Vec3 u0 = oaxis(K), e = ospace(K);
  const Vec3 uxz = std::cosh(tri.boost) * u0 + std::sinh(tri.boost) * e;
  Vec3 u1, u2;
  if (vertex == 0) {
    u1 = u0;  // x -> y
    u2 = uxz;
  } else if (vertex == 1) {
    u1 = ogeoVel(K, tri.x, u0, a);  // continuation of x -> y at y
    u2 = otangent(K, tri.y, tri.z, b);
  } else {
    u1 = ogeoVel(K, tri.x, uxz, c);                       // x -> z at z
    u2 = ogeoVel(K, tri.y, otangent(K, tri.y, tri.z, b), b);  // y -> z at z
  }
  const double g = oform(K, u1, u2);
  return std::acosh(std::max(1.0, g));
}

// Hyperbolic-plane distance oracle in the hyperboloid model.
inline double oh2dist(const Vec3& p, const Vec3& q) {
  const double w = p[0] * q[0] - p[1] * q[1] - p[2] * q[2];
  return std::acosh(std::max(1.0, w));
}

// Draw a random valid timelike side triple a + b <= c within an extent.
template <typename RngT>
inline void orandomSides(RngT& rng, double maxC, double& a, double& b, double& c) {
  c = rng.uniform(0.2, maxC);
  a = rng.uniform(0.05, 0.9) * c;
  const double slack = c - a;
  b = rng.uniform(0.05, 0.95) * slack;
}

}  // namespace testutil

#endif  // LORCOMP_TESTS_TESTUTIL_HPP_
