#include "lorcomp/model2d.hpp"

#include <algorithm>
#include <cmath>

namespace lorcomp {

namespace {

constexpr double kQuadricTol = 1e-9;
constexpr double kNullBand = 1e-12;
constexpr double kCollinearTol = 1e-12;

// Signature of the ambient bilinear form as a diagonal triple.
std::array<double, 3> signature(const CurvatureParam& param) {
  if (param.K > 0.0) return {1.0, -1.0, -1.0};
  if (param.K < 0.0) return {1.0, 1.0, -1.0};
  return {1.0, -1.0, 0.0};  // flat: (t, x, unused)
}

Vec3 origin_point(const CurvatureParam& param) {
  if (param.K > 0.0) return {0.0, param.s, 0.0};
  if (param.K < 0.0) return {param.s, 0.0, 0.0};
  return {0.0, 0.0, 0.0};
}

Vec3 origin_time_axis(const CurvatureParam& param) {
  if (param.K > 0.0) return {1.0, 0.0, 0.0};
  if (param.K < 0.0) return {0.0, 1.0, 0.0};
  return {1.0, 0.0, 0.0};
}

Vec3 origin_space_axis(const CurvatureParam& param) {
  if (param.K != 0.0) return {0.0, 0.0, 1.0};
  return {0.0, 1.0, 0.0};
}

double clamp_cosh_arg(double w, const char* what) {
  if (w < 1.0) {
    if (w < 1.0 - kTolExact) throw InvalidTriangleError(what);
    return 1.0;
  }
  return w;
}

void check_sides(const CurvatureParam& param, const TriangleSides& t) {
  if (!(t.a > 0.0) || !(t.b > 0.0) || !(t.c > 0.0))
    throw InvalidTriangleError("triangle sides must be positive");
  if (t.c + kCollinearTol * std::max(t.c, 1.0) < t.a + t.b)
    throw InvalidTriangleError("sides violate the reverse triangle inequality");
  if (t.c >= param.diameter)
    throw SizeBoundError("long side exceeds the timelike diameter");
}

bool collinear_sides(const TriangleSides& t) {
  return t.c - (t.a + t.b) <= kCollinearTol * std::max(t.c, 1.0);
}

}  // namespace

CurvatureParam CurvatureParam::fromK(double K) {
  if (!std::isfinite(K)) throw RangeError("curvature must be finite");
  CurvatureParam p;
  p.K = K;
  p.s = K != 0.0 ? 1.0 / std::sqrt(std::abs(K)) : 0.0;
  p.diameter = K < 0.0 ? kPi * p.s : kInf;
  return p;
}

double model_form(const CurvatureParam& param, const Vec3& u, const Vec3& v) {
  const auto eps = signature(param);
  return eps[0] * u[0] * v[0] + eps[1] * u[1] * v[1] + eps[2] * u[2] * v[2];
}

void check_model_point(const CurvatureParam& param, const ModelPoint& p) {
  for (double c : p.c)
    if (!std::isfinite(c)) throw InvalidPointError("non-finite coordinate");
  if (param.K == 0.0) {
    if (p.c[2] != 0.0) throw InvalidPointError("flat-plane point must have zero third coordinate");
    return;
  }
  const double s2 = param.s * param.s;
  const double target = param.K > 0.0 ? -s2 : s2;
  if (std::abs(model_form(param, p.c, p.c) - target) > kQuadricTol * s2)
    throw InvalidPointError("point is off the model quadric");
}

double model_time(const CurvatureParam& param, const ModelPoint& p) {
  if (param.K < 0.0) return param.s * std::atan2(p.c[1], p.c[0]);
  return p.c[0];
}

TauClass tau_model(const CurvatureParam& param, const ModelPoint& p, const ModelPoint& q) {
  check_model_point(param, p);
  check_model_point(param, q);
  TauClass out;
  if (param.K == 0.0) {
    const double dt = q.c[0] - p.c[0], dx = q.c[1] - p.c[1];
    const double q2 = dt * dt - dx * dx;
    const double band = kNullBand * std::max(dt * dt + dx * dx, 1.0);
    if (std::abs(q2) <= band) {
      out.cls = CausalClass::Null;
    } else if (q2 > 0.0) {
      out.tau = std::sqrt(q2);
      out.cls = dt > 0.0 ? CausalClass::TimelikeFuture : CausalClass::TimelikePast;
    }
    return out;
  }
  const double s2 = param.s * param.s;
  if (param.K > 0.0) {
    const double w = -model_form(param, p.c, q.c) / s2;
    const double band = kNullBand * std::max(std::abs(w), 1.0);
    if (std::abs(w - 1.0) <= band) {
      out.cls = CausalClass::Null;
    } else if (w > 1.0) {
      out.tau = param.s * std::acosh(w);
      out.cls = q.c[0] > p.c[0] ? CausalClass::TimelikeFuture : CausalClass::TimelikePast;
    }
    return out;
  }
  const double w = model_form(param, p.c, q.c) / s2;
  const double band = kNullBand * std::max(std::abs(w), 1.0);
  if (std::abs(w - 1.0) <= band) {
    out.cls = CausalClass::Null;
  } else if (w < 1.0) {
    out.tau = param.s * std::acos(std::clamp(w, -1.0, 1.0));
    out.cls = model_time(param, q) > model_time(param, p) ? CausalClass::TimelikeFuture
                                                          : CausalClass::TimelikePast;
  }
  return out;
}

double tau_ordered(const CurvatureParam& param, const ModelPoint& p, const ModelPoint& q) {
  const TauClass tc = tau_model(param, p, q);
  return tc.cls == CausalClass::TimelikeFuture ? tc.tau : 0.0;
}

ModelPoint geodesic_point(const CurvatureParam& param, const ModelPoint& p, const Vec3& u,
                          double T) {
  check_model_point(param, p);
  const bool unit = std::abs(model_form(param, u, u) - 1.0) <= kTolExact;
  if (!unit || (param.K != 0.0 &&
                std::abs(model_form(param, p.c, u)) > kTolExact * std::max(param.s, 1.0)))
    throw InvalidPointError("tangent is not a unit vector orthogonal to the base point");
  if (param.K == 0.0) return ModelPoint{p.c + T * u};
  const double q = T / param.s;
  if (param.K > 0.0) return ModelPoint{std::cosh(q) * p.c + (param.s * std::sinh(q)) * u};
  return ModelPoint{std::cos(q) * p.c + (param.s * std::sin(q)) * u};
}

Vec3 unit_tangent(const CurvatureParam& param, const ModelPoint& p, const ModelPoint& q) {
  const TauClass tc = tau_model(param, p, q);
  if (tc.cls != CausalClass::TimelikeFuture)
    throw CausalityError("tangent requires a strictly timelike future-directed pair");
  if (param.K == 0.0) return (1.0 / tc.tau) * (q.c - p.c);
  const double qa = tc.tau / param.s;
  if (param.K > 0.0)
    return (1.0 / (param.s * std::sinh(qa))) * (q.c - std::cosh(qa) * p.c);
  return (1.0 / (param.s * std::sin(qa))) * (q.c - std::cos(qa) * p.c);
}

Vec3 endpoint_tangent(const CurvatureParam& param, const ModelPoint& p, const ModelPoint& q) {
  const TauClass tc = tau_model(param, p, q);
  if (tc.cls != CausalClass::TimelikeFuture)
    throw CausalityError("tangent requires a strictly timelike future-directed pair");
  if (param.K == 0.0) return (1.0 / tc.tau) * (q.c - p.c);
  const Vec3 u = unit_tangent(param, p, q);
  const double qa = tc.tau / param.s;
  if (param.K > 0.0) return (std::sinh(qa) / param.s) * p.c + std::cosh(qa) * u;
  return (-std::sin(qa) / param.s) * p.c + std::cos(qa) * u;
}

ModelPoint geodesic_interpolate(const CurvatureParam& param, const ModelPoint& p,
                                const ModelPoint& q, double u) {
  const TauClass tc = tau_model(param, p, q);
  if (tc.cls != CausalClass::TimelikeFuture)
    throw CausalityError("interpolation requires a strictly timelike future-directed pair");
  if (u < -kTolExact || u > tc.tau + kTolExact)
    throw RangeError("interpolation parameter outside [0, tau]");
  return geodesic_point(param, p, unit_tangent(param, p, q), std::clamp(u, 0.0, tc.tau));
}

AxisFrame axis_frame(const CurvatureParam& param, double h) {
  AxisFrame f;
  if (param.K == 0.0) {
    f.pt = ModelPoint{{h, 0.0, 0.0}};
    f.u = {1.0, 0.0, 0.0};
    f.e = {0.0, 1.0, 0.0};
    return f;
  }
  const double q = h / param.s;
  if (param.K > 0.0) {
    f.pt = ModelPoint{{param.s * std::sinh(q), param.s * std::cosh(q), 0.0}};
    f.u = {std::cosh(q), std::sinh(q), 0.0};
  } else {
    f.pt = ModelPoint{{param.s * std::cos(q), param.s * std::sin(q), 0.0}};
    f.u = {-std::sin(q), std::cos(q), 0.0};
  }
  f.e = {0.0, 0.0, 1.0};
  return f;
}

double comparison_angle(const CurvatureParam& param, const TriangleSides& t, Vertex v) {
  check_sides(param, t);
  if (collinear_sides(t)) return 0.0;
  double w = 0.0;
  if (param.K == 0.0) {
    switch (v) {
      case Vertex::X: w = (t.a * t.a + t.c * t.c - t.b * t.b) / (2.0 * t.a * t.c); break;
      case Vertex::Y: w = (t.c * t.c - t.a * t.a - t.b * t.b) / (2.0 * t.a * t.b); break;
      case Vertex::Z: w = (t.b * t.b + t.c * t.c - t.a * t.a) / (2.0 * t.b * t.c); break;
    }
  } else {
    const double qa = t.a / param.s, qb = t.b / param.s, qc = t.c / param.s;
    if (param.K > 0.0) {
      switch (v) {
        case Vertex::X:
          w = (std::cosh(qa) * std::cosh(qc) - std::cosh(qb)) / (std::sinh(qa) * std::sinh(qc));
          break;
        case Vertex::Y:
          w = (std::cosh(qc) - std::cosh(qa) * std::cosh(qb)) / (std::sinh(qa) * std::sinh(qb));
          break;
        case Vertex::Z:
          w = (std::cosh(qb) * std::cosh(qc) - std::cosh(qa)) / (std::sinh(qb) * std::sinh(qc));
          break;
      }
    } else {
      switch (v) {
        case Vertex::X:
          w = (std::cos(qb) - std::cos(qa) * std::cos(qc)) / (std::sin(qa) * std::sin(qc));
          break;
        case Vertex::Y:
          w = (std::cos(qa) * std::cos(qb) - std::cos(qc)) / (std::sin(qa) * std::sin(qb));
          break;
        case Vertex::Z:
          w = (std::cos(qa) - std::cos(qb) * std::cos(qc)) / (std::sin(qb) * std::sin(qc));
          break;
      }
    }
  }
  return std::acosh(clamp_cosh_arg(w, "comparison angle undefined for these sides"));
}

double signed_comparison_angle(const CurvatureParam& param, const TriangleSides& t, Vertex v) {
  const double sigma = v == Vertex::Y ? 1.0 : -1.0;
  return sigma * comparison_angle(param, t, v);
}

RealizedTriangle realize_triangle(const CurvatureParam& param, const TriangleSides& t) {
  check_sides(param, t);
  RealizedTriangle r;
  r.param = param;
  r.sides = t;
  r.px = ModelPoint{origin_point(param)};
  const Vec3 u0 = origin_time_axis(param);
  const Vec3 e0 = origin_space_axis(param);
  r.py = geodesic_point(param, r.px, u0, t.a);
  const double wx = comparison_angle(param, t, Vertex::X);
  r.pz = geodesic_point(param, r.px, std::cosh(wx) * u0 + std::sinh(wx) * e0, t.c);
  return r;
}

ModelPoint reflect_across_geodesic(const CurvatureParam& param, const ModelPoint& g1,
                                   const ModelPoint& g2, const ModelPoint& r) {
  check_model_point(param, g1);
  check_model_point(param, g2);
  check_model_point(param, r);
  if (param.K == 0.0) {
    const double vt = g2.c[0] - g1.c[0], vx = g2.c[1] - g1.c[1];
    const Vec3 n = {vx, vt, 0.0};
    const double nn = n[0] * n[0] - n[1] * n[1];
    if (std::abs(nn) <= kTolExact * (vt * vt + vx * vx))
      throw DegenerateError("cannot reflect across a null or degenerate line");
    const Vec3 d = r.c - g1.c;
    const double dn = d[0] * n[0] - d[1] * n[1];
    return ModelPoint{r.c - (2.0 * dn / nn) * n};
  }
  const auto eps = signature(param);
  const Vec3 cr = {g1.c[1] * g2.c[2] - g1.c[2] * g2.c[1],
                   g1.c[2] * g2.c[0] - g1.c[0] * g2.c[2],
                   g1.c[0] * g2.c[1] - g1.c[1] * g2.c[0]};
  const Vec3 n = {cr[0] / eps[0], cr[1] / eps[1], cr[2] / eps[2]};
  const double nn = model_form(param, n, n);
  if (std::abs(nn) <= kTolExact * param.s * param.s * param.s * param.s)
    throw DegenerateError("cannot reflect across a null or degenerate geodesic");
  return ModelPoint{r.c - (2.0 * model_form(param, r.c, n) / nn) * n};
}

// --- H^2 ---

namespace {
double h_form(const Vec3& u, const Vec3& v) {
  return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}
}  // namespace

void check_h_point(const HPoint& u) {
  if (std::abs(h_form(u.c, u.c) + 1.0) > kQuadricTol || u.c[0] < 1.0 - kQuadricTol)
    throw InvalidPointError("point is off the upper unit hyperboloid");
}

double h2_distance(const HPoint& u, const HPoint& v) {
  check_h_point(u);
  check_h_point(v);
  return std::acosh(std::max(1.0, -h_form(u.c, v.c)));
}

HPoint h2_midpoint(const HPoint& u, const HPoint& v) {
  check_h_point(u);
  check_h_point(v);
  const Vec3 m = u.c + v.c;
  const double norm = std::sqrt(-h_form(m, m));
  return HPoint{(1.0 / norm) * m};
}

HPoint h2_point_toward(const HPoint& u, const HPoint& v, double dist) {
  const double d = h2_distance(u, v);
  if (d <= kTolExact) throw DegenerateError("direction undefined for coincident points");
  const Vec3 t = (1.0 / std::sinh(d)) * (v.c - std::cosh(d) * u.c);
  return HPoint{std::cosh(dist) * u.c + std::sinh(dist) * t};
}

std::array<HPoint, 3> realize_h2_triangle(double d12, double d13, double d23) {
  if (!(d12 > 0.0) || !(d13 > 0.0) || d23 < 0.0)
    throw InvalidTriangleError("side lengths must be nonnegative with d12, d13 positive");
  double cphi = (std::cosh(d12) * std::cosh(d13) - std::cosh(d23)) /
                (std::sinh(d12) * std::sinh(d13));
  if (std::abs(cphi) > 1.0 + kTolExact)
    throw InvalidTriangleError("sides violate the hyperbolic triangle inequality");
  cphi = std::clamp(cphi, -1.0, 1.0);
  const double sphi = std::sqrt(std::max(0.0, 1.0 - cphi * cphi));
  std::array<HPoint, 3> out;
  out[0] = HPoint{{1.0, 0.0, 0.0}};
  out[1] = HPoint{{std::cosh(d12), std::sinh(d12), 0.0}};
  out[2] = HPoint{{std::cosh(d13), std::sinh(d13) * cphi, std::sinh(d13) * sphi}};
  return out;
}

}  // namespace lorcomp
