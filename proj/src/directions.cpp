#include "lorcomp/directions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lorcomp/cone.hpp"

namespace lorcomp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool future_pointing(const AmbientSpec& spec, const Vec3& p, const Vec3& u) {
  if (spec.kind == AmbientSpec::Kind::AntiDeSitter2)
    return p[0] * u[1] - p[1] * u[0] > 0.0;
  return u[0] > 0.0;
}

void check_same_site(const DirectionSample& a, const DirectionSample& b) {
  if (a.ambient.kind != b.ambient.kind || a.ambient.s != b.ambient.s)
    throw StructuralError("direction samples live in different ambients");
  const Vec3 dp = a.p - b.p;
  if (std::abs(dp[0]) + std::abs(dp[1]) + std::abs(dp[2]) > kTolExact)
    throw StructuralError("direction samples have different base points");
}

double tau_mag(const AmbientSpec& spec, const Vec3& a, const Vec3& b) {
  const TauClass tc = ambient_tau(spec, a, b);
  return (tc.cls == CausalClass::TimelikeFuture || tc.cls == CausalClass::TimelikePast) ? tc.tau
                                                                                        : 0.0;
}

}  // namespace

void check_direction(const DirectionSample& d) {
  check_ambient_point(d.ambient, d.p);
  if (std::abs(ambient_form(d.ambient, d.u, d.u) - 1.0) > kTolExact)
    throw InvalidPointError("direction tangent is not unit timelike");
  if (d.ambient.curved() &&
      std::abs(ambient_form(d.ambient, d.p, d.u)) > kTolExact * std::max(d.ambient.s, 1.0))
    throw InvalidPointError("direction tangent is not tangent to the quadric");
  if (!future_pointing(d.ambient, d.p, d.u))
    throw CausalityError("direction tangent is not future-pointing");
}

Vec3 ambient_origin(const AmbientSpec& spec) {
  switch (spec.kind) {
    case AmbientSpec::Kind::DeSitter2: return {0.0, spec.s, 0.0};
    case AmbientSpec::Kind::AntiDeSitter2: return {spec.s, 0.0, 0.0};
    default: return {0.0, 0.0, 0.0};
  }
}

DirectionSample boost_direction(const AmbientSpec& spec, double chi, double phi) {
  DirectionSample d;
  d.ambient = spec;
  d.p = ambient_origin(spec);
  Vec3 u0, e;
  switch (spec.kind) {
    case AmbientSpec::Kind::Minkowski2:
      u0 = {1.0, 0.0, 0.0};
      e = {0.0, 1.0, 0.0};
      break;
    case AmbientSpec::Kind::Minkowski3:
      u0 = {1.0, 0.0, 0.0};
      e = {0.0, std::cos(phi), std::sin(phi)};
      break;
    case AmbientSpec::Kind::DeSitter2:
      u0 = {1.0, 0.0, 0.0};
      e = {0.0, 0.0, 1.0};
      break;
    case AmbientSpec::Kind::AntiDeSitter2:
      u0 = {0.0, 1.0, 0.0};
      e = {0.0, 0.0, 1.0};
      break;
  }
  d.u = std::cosh(chi) * u0 + std::sinh(chi) * e;
  check_direction(d);
  return d;
}

double smooth_angle(const DirectionSample& d1, const DirectionSample& d2) {
  check_direction(d1);
  check_direction(d2);
  check_same_site(d1, d2);
  return std::acosh(std::max(1.0, ambient_form(d1.ambient, d1.u, d2.u)));
}

double GridSpec::at(int i) const { return t0 * std::ldexp(1.0, -(kmin + i)); }

AngleGrid angle_estimate(const DirectionSample& d1, const DirectionSample& d2,
                         const GridSpec& grid, double K) {
  check_direction(d1);
  check_direction(d2);
  check_same_site(d1, d2);
  const CurvatureParam param = CurvatureParam::fromK(K);
  const AmbientSpec& spec = d1.ambient;
  const int m = grid.count();
  AngleGrid out;
  out.grid.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out.grid[static_cast<std::size_t>(i)] = grid.at(i);
  out.theta.assign(static_cast<std::size_t>(m) * m, kNaN);
  std::vector<Vec3> as(static_cast<std::size_t>(m)), cs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    as[static_cast<std::size_t>(i)] = ambient_exp(spec, d1.p, d1.u, grid.at(i));
    cs[static_cast<std::size_t>(i)] = ambient_exp(spec, d2.p, d2.u, grid.at(i));
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double t = grid.at(i), s = grid.at(j);
      const TauClass tc =
          ambient_tau(spec, as[static_cast<std::size_t>(i)], cs[static_cast<std::size_t>(j)]);
      try {
        double theta = kNaN;
        if (tc.cls == CausalClass::TimelikeFuture)
          theta = comparison_angle(param, {t, tc.tau, s}, Vertex::X);
        else if (tc.cls == CausalClass::TimelikePast)
          theta = comparison_angle(param, {s, tc.tau, t}, Vertex::X);
        out.theta[static_cast<std::size_t>(i) * m + j] = theta;
      } catch (const std::runtime_error&) {
        // leave absent
      }
    }
  // Supremum over the finest tail block (last quarter of the schedule),
  // widening to the entries that involve a tail scale when the strict block
  // has no valid triangles.
  const int start = m - std::max(1, m / 4);
  double sup = kNaN;
  for (int i = start; i < m; ++i)
    for (int j = start; j < m; ++j) {
      const double th = out.at(i, j);
      if (!std::isnan(th) && (std::isnan(sup) || th > sup)) sup = th;
    }
  if (std::isnan(sup))
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (std::max(i, j) < start) continue;
        const double th = out.at(i, j);
        if (!std::isnan(th) && (std::isnan(sup) || th > sup)) sup = th;
      }
  out.estimate = std::isnan(sup) ? 0.0 : sup;
  // Richardson diagnostic from the per-scale suprema of the last two scales.
  auto scale_sup = [&](int k) {
    double v = kNaN;
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) {
        if (std::max(i, j) != k) continue;
        const double th = out.at(i, j);
        if (!std::isnan(th) && (std::isnan(v) || th > v)) v = th;
      }
    return v;
  };
  const double sLast = scale_sup(m - 1), sPrev = scale_sup(m - 2);
  out.richardson =
      (!std::isnan(sLast) && !std::isnan(sPrev)) ? 2.0 * sLast - sPrev : out.estimate;
  out.warning = std::abs(out.estimate - out.richardson) > 1e-3;
  return out;
}

MonotonicityVerdict theta_monotonicity(const DirectionSample& d1, const DirectionSample& d2,
                                       const GridSpec& grid, Side side, double tol) {
  const AngleGrid g = angle_estimate(d1, d2, grid);
  MonotonicityVerdict v;
  const int m = grid.count();
  // Index i increasing means t decreasing; an upper curvature bound demands
  // unsigned theta nondecreasing toward finer scales, a lower bound the
  // reverse.
  auto defect = [&](double coarser, double finer) {
    return side == Side::Upper ? std::max(0.0, coarser - finer) : std::max(0.0, finer - coarser);
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double th = g.at(i, j);
      if (std::isnan(th)) continue;
      if (i + 1 < m && !std::isnan(g.at(i + 1, j))) {
        v.worstDefect = std::max(v.worstDefect, defect(th, g.at(i + 1, j)));
        ++v.comparisons;
      }
      if (j + 1 < m && !std::isnan(g.at(i, j + 1))) {
        v.worstDefect = std::max(v.worstDefect, defect(th, g.at(i, j + 1)));
        ++v.comparisons;
      }
    }
  v.pass = v.worstDefect <= tol;
  return v;
}

std::pair<double, DirectionSample> log_map(const AmbientSpec& spec, const Vec3& p,
                                           const Vec3& x) {
  const TauClass tc = ambient_tau(spec, p, x);
  if (tc.cls != CausalClass::TimelikeFuture)
    throw CausalityError("log map needs x in the chronological future of p");
  if (spec.kind == AmbientSpec::Kind::AntiDeSitter2 && tc.tau >= kPi * spec.s)
    throw RangeError("pair outside the unique-geodesic region");
  DirectionSample d;
  d.ambient = spec;
  d.p = p;
  d.u = ambient_unit_tangent(spec, p, x);
  return {tc.tau, d};
}

Vec3 exp_map(const DirectionSample& d, double r) {
  check_direction(d);
  if (r < 0.0) throw RangeError("exponential radius must be nonnegative");
  return ambient_exp(d.ambient, d.p, d.u, r);
}

MidpointResult direction_midpoint(const DirectionSample& d1, const DirectionSample& d2,
                                  double eps) {
  if (!(eps > 0.0)) throw RangeError("eps must be positive");
  const GridSpec grid;
  const AngleGrid ag = angle_estimate(d1, d2, grid);
  const double omega = ag.estimate;
  if (omega <= 1e-9) return {d1, 0.0, 0.0};
  const AmbientSpec& spec = d1.ambient;
  const CurvatureParam flat = CurvatureParam::fromK(0.0);
  const int m = grid.count();
  // Pick the finest future-ordered grid pair whose comparison angle is within
  // eps of the estimate (fall back to the closest one).
  int bi = -1, bj = -1;
  double bestScale = kInf, bestGap = kInf;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double th = ag.at(i, j);
      if (std::isnan(th)) continue;
      const Vec3 a = ambient_exp(spec, d1.p, d1.u, grid.at(i));
      const Vec3 c = ambient_exp(spec, d2.p, d2.u, grid.at(j));
      if (ambient_tau(spec, a, c).cls != CausalClass::TimelikeFuture) continue;
      const double gap = std::abs(th - omega);
      const double sc = std::max(grid.at(i), grid.at(j));
      const bool ok = gap < eps;
      const bool better = ok ? (bestGap >= eps || sc < bestScale) : (bestGap >= eps && gap < bestGap);
      if (better) {
        bi = i;
        bj = j;
        bestScale = sc;
        bestGap = gap;
      }
    }
  if (bi < 0) throw NumericalError("no future-ordered grid pair available for the bisection");
  const double t = grid.at(bi), s = grid.at(bj);
  const Vec3 a = ambient_exp(spec, d1.p, d1.u, t);
  const Vec3 c = ambient_exp(spec, d2.p, d2.u, s);
  const double tac = ambient_tau(spec, a, c).tau;
  auto angles = [&](double lam) {
    const Vec3 b = ambient_geodesic(spec, a, c, lam);
    const double tpb = ambient_tau(spec, d1.p, b).tau;
    const double f1 = lam > 0.0 ? comparison_angle(flat, {t, lam, tpb}, Vertex::X) : 0.0;
    const double f2 = lam < tac ? comparison_angle(flat, {tpb, tac - lam, s}, Vertex::X) : 0.0;
    return std::pair<double, double>{f1, f2};
  };
  double lo = 1e-9 * tac, hi = (1.0 - 1e-9) * tac;
  auto h = [&](double lam) {
    const auto [f1, f2] = angles(lam);
    return f1 - f2;
  };
  if (!(h(lo) < 0.0) || !(h(hi) > 0.0))
    throw NumericalError("equal-angle bisection does not bracket on this realizer");
  double lam = 0.5 * (lo + hi);
  double f1 = 0.0, f2 = 0.0;
  for (int it = 0; it < 200; ++it) {
    lam = 0.5 * (lo + hi);
    const auto [g1v, g2v] = angles(lam);
    f1 = g1v;
    f2 = g2v;
    if (std::abs(f1 - f2) <= eps / 4.0) break;
    (f1 - f2 < 0.0 ? lo : hi) = lam;
  }
  const Vec3 b = ambient_geodesic(spec, a, c, lam);
  MidpointResult res;
  res.m = log_map(spec, d1.p, b).second;
  res.angle1 = angle_estimate(d1, res.m, grid).estimate;
  res.angle2 = angle_estimate(res.m, d2, grid).estimate;
  return res;
}

bool chronology_threshold(const DirectionSample& d1, const DirectionSample& d2, double mu,
                          double t) {
  if (!(mu > 0.0) || !(mu < 1.0)) throw RangeError("mu must lie in (0,1)");
  if (!(t > 0.0)) throw RangeError("t must be positive");
  check_same_site(d1, d2);
  const Vec3 a = exp_map(d1, mu * t);
  const Vec3 b = exp_map(d2, t);
  return ambient_tau(d1.ambient, a, b).cls == CausalClass::TimelikeFuture;
}

double threshold_flip(const DirectionSample& d1, const DirectionSample& d2, double t) {
  double lo = 1e-9, hi = 1.0 - 1e-9;
  if (!chronology_threshold(d1, d2, lo, t) || chronology_threshold(d1, d2, hi, t))
    throw NumericalError("chronology relation does not flip inside (0,1)");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (chronology_threshold(d1, d2, mid, t) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BlowupTable blowup_table(const Vec3& p,
                         const std::vector<std::pair<double, DirectionSample>>& items,
                         const std::vector<double>& lambdas) {
  if (items.size() < 2) throw RangeError("blow-up needs at least two items");
  if (lambdas.empty()) throw RangeError("lambda schedule must be nonempty");
  const AmbientSpec& spec = items.front().second.ambient;
  for (const auto& [r, d] : items) {
    if (!(r > 0.0)) throw RangeError("blow-up radii must be positive");
    check_direction(d);
    check_same_site(d, items.front().second);
    const Vec3 dp = d.p - p;
    if (std::abs(dp[0]) + std::abs(dp[1]) + std::abs(dp[2]) > kTolExact)
      throw StructuralError("blow-up items must be based at p");
  }
  BlowupTable tab;
  tab.lambdas = lambdas;
  const int n = static_cast<int>(items.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      tab.pairs.push_back({i, j});
      const double ri = items[static_cast<std::size_t>(i)].first;
      const double rj = items[static_cast<std::size_t>(j)].first;
      const double om = smooth_angle(items[static_cast<std::size_t>(i)].second,
                                     items[static_cast<std::size_t>(j)].second);
      const ConeTau ct = cone_tau(std::min(ri, rj), std::max(ri, rj), om);
      tab.reference.push_back(ct.causal ? ct.tau : 0.0);
    }
  for (double lam : lambdas) {
    std::vector<Vec3> pts;
    pts.reserve(items.size());
    for (const auto& [r, d] : items) pts.push_back(exp_map(d, lam * r));
    std::vector<double> row;
    row.reserve(tab.pairs.size());
    for (const auto& pr : tab.pairs)
      row.push_back(tau_mag(spec, pts[static_cast<std::size_t>(pr[0])],
                            pts[static_cast<std::size_t>(pr[1])]) /
                    lam);
    tab.values.push_back(std::move(row));
  }
  tab.finestError.resize(tab.pairs.size());
  for (std::size_t k = 0; k < tab.pairs.size(); ++k)
    tab.finestError[k] = std::abs(tab.values.back()[k] - tab.reference[k]);
  if (n == 4) {
    bool chain = true;
    for (std::size_t k = 0; k < tab.pairs.size(); ++k)
      if (!(tab.reference[k] > 0.0)) chain = false;
    if (chain) {
      tab.coneChain = true;
      const QuadrupleTaus q{tab.reference[0], tab.reference[1], tab.reference[2],
                            tab.reference[3], tab.reference[4], tab.reference[5]};
      const Verdict v =
          four_point_lower_margins(CurvatureParam::fromK(0.0), q, kTolScan);
      tab.chainMargins = v.margins;
    }
  }
  return tab;
}

}  // namespace lorcomp
