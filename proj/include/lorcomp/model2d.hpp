#ifndef LORCOMP_MODEL2D_HPP_
#define LORCOMP_MODEL2D_HPP_

#include <array>

#include "lorcomp/common.hpp"

namespace lorcomp {

// The 2-D Lorentzian model planes of constant curvature K:
//   K = 0  flat plane R^{1,1}, points stored (t, x, 0)
//   K > 0  de Sitter quadric <p,p> = -s^2 in signature (+,-,-)
//   K < 0  anti-de Sitter quadric <p,p> = +s^2 in signature (+,+,-),
//          restricted to a simply connected patch of angular-time extent < 2*pi*s.
// Timelike-positive convention throughout: unit future timelike tangents u
// satisfy <u,u> = +1, and cosh of a hyperbolic angle is an inner product.

enum class CausalClass { TimelikeFuture, TimelikePast, Null, Spacelike };

struct CurvatureParam {
  double K = 0.0;
  double s = 0.0;           // 1/sqrt(|K|) for K != 0, unused for K = 0
  double diameter = kInf;   // D_K = pi/sqrt(-K) for K < 0, infinity otherwise

  static CurvatureParam fromK(double K);
};

struct ModelPoint {
  Vec3 c{0.0, 0.0, 0.0};
};

struct TriangleSides {
  double a = 0.0;  // tau(x, y)
  double b = 0.0;  // tau(y, z)
  double c = 0.0;  // tau(x, z)
};

enum class Vertex { X, Y, Z };

struct RealizedTriangle {
  CurvatureParam param;
  ModelPoint px, py, pz;
  TriangleSides sides;
};

struct TauClass {
  double tau = 0.0;
  CausalClass cls = CausalClass::Spacelike;
};

// Ambient bilinear form of the model's embedding space.
double model_form(const CurvatureParam& param, const Vec3& u, const Vec3& v);

// Throws InvalidPointError if p is off the quadric beyond 1e-9 * s^2.
void check_model_point(const CurvatureParam& param, const ModelPoint& p);

TauClass tau_model(const CurvatureParam& param, const ModelPoint& p, const ModelPoint& q);

// tau if q lies in the causal future of p, else 0.
double tau_ordered(const CurvatureParam& param, const ModelPoint& p, const ModelPoint& q);

// Global time coordinate used for future/past classification.
double model_time(const CurvatureParam& param, const ModelPoint& p);

// Geodesic from p with unit future timelike tangent u, tau-arclength T (may be
// negative to run into the past).
ModelPoint geodesic_point(const CurvatureParam& param, const ModelPoint& p, const Vec3& u,
                          double T);

// Unit future timelike tangent at p toward q; requires p << q.
Vec3 unit_tangent(const CurvatureParam& param, const ModelPoint& p, const ModelPoint& q);

// Unit future timelike tangent at q along the geodesic arriving from p (p << q).
Vec3 endpoint_tangent(const CurvatureParam& param, const ModelPoint& p, const ModelPoint& q);

// Point m on the geodesic from p to q with tau(p,m) = u; requires p << q and
// u in [0, tau(p,q)].
ModelPoint geodesic_interpolate(const CurvatureParam& param, const ModelPoint& p,
                                const ModelPoint& q, double u);

// Canonical frame on the model's time axis at tau-height h from the origin:
// the point, the future unit tangent along the axis, and the parallel spatial
// unit normal.
struct AxisFrame {
  ModelPoint pt;
  Vec3 u;
  Vec3 e;
};
AxisFrame axis_frame(const CurvatureParam& param, double h);

// Comparison angle of the triangle with the given side lengths at the given
// vertex. Closed form per K; the realization oracle in the tests pins every
// sign.
double comparison_angle(const CurvatureParam& param, const TriangleSides& sides, Vertex v);

// sigma * angle with sigma = -1 at the most-past (x) and most-future (z)
// vertices, +1 at the middle vertex (y).
double signed_comparison_angle(const CurvatureParam& param, const TriangleSides& sides, Vertex v);

// Canonical placement: x at the origin, y on the future time axis, z with
// nonnegative spatial coordinate.
RealizedTriangle realize_triangle(const CurvatureParam& param, const TriangleSides& sides);

// Isometric reflection fixing the geodesic through g1 and g2 pointwise.
ModelPoint reflect_across_geodesic(const CurvatureParam& param, const ModelPoint& g1,
                                   const ModelPoint& g2, const ModelPoint& r);

// --- H^2 (unit hyperboloid in R^{1,2}, form -++ , first coordinate >= 1) ---

struct HPoint {
  Vec3 c{1.0, 0.0, 0.0};
};

void check_h_point(const HPoint& u);
double h2_distance(const HPoint& u, const HPoint& v);
HPoint h2_midpoint(const HPoint& u, const HPoint& v);

// Point at the given distance from u along the geodesic toward v.
HPoint h2_point_toward(const HPoint& u, const HPoint& v, double dist);

// Triangle with the given side lengths; u1 at (1,0,0), u2 along the first
// spatial axis, u3 with nonnegative second spatial coordinate.
std::array<HPoint, 3> realize_h2_triangle(double d12, double d13, double d23);

}  // namespace lorcomp

#endif  // LORCOMP_MODEL2D_HPP_
