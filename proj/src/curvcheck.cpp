#include "lorcomp/curvcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace lorcomp {

namespace {

// Model time separation as a magnitude: tau when the pair is timelike in
// either direction, 0 otherwise.
double model_tau_mag(const CurvatureParam& param, const ModelPoint& p, const ModelPoint& q) {
  const TauClass tc = tau_model(param, p, q);
  return (tc.cls == CausalClass::TimelikeFuture || tc.cls == CausalClass::TimelikePast) ? tc.tau
                                                                                        : 0.0;
}

ModelPoint place_from_frame(const CurvatureParam& param, const AxisFrame& f, double omega,
                            double sideSign, double dist) {
  const Vec3 u = std::cosh(omega) * f.u + (sideSign * std::sinh(omega)) * f.e;
  return geodesic_point(param, f.pt, u, dist);
}

bool size_bound_exceeded(const CurvatureParam& param, const QuadrupleTaus& q) {
  if (param.K >= 0.0) return false;
  const double longest = std::max({q.t13, q.t14, q.t24});
  return longest >= param.diameter;
}

}  // namespace

Verdict four_point_upper_margin(const CurvatureParam& param, const QuadrupleTaus& q,
                                double tol, const GlueConfig& cfg) {
  if (!(q.t12 > 0.0) || !(q.t23 > 0.0) || q.t34 < 0.0)
    throw CausalityError("upper four-point needs x1 << x2 << x3 <= x4");
  Verdict v;
  if (size_bound_exceeded(param, q)) {
    v.skipped = true;
    v.skipReason = "size-bound";
    return v;
  }
  const AxisFrame f0 = axis_frame(param, 0.0);
  const double wA = comparison_angle(param, {q.t12, q.t23, q.t13}, Vertex::X);
  const ModelPoint x3 = place_from_frame(param, f0, wA, 1.0, q.t13);
  const double wB = comparison_angle(param, {q.t12, q.t24, q.t14}, Vertex::X);
  const ModelPoint x4 = place_from_frame(param, f0, wB, cfg.upperOpposite ? -1.0 : 1.0, q.t14);
  v.margins = {q.t34 - model_tau_mag(param, x3, x4)};
  v.pass = v.margins[0] >= -tol;
  return v;
}

Verdict four_point_lower_margins(const CurvatureParam& param, const QuadrupleTaus& q,
                                 double tol, const GlueConfig& cfg) {
  if (!(q.t12 > 0.0) || !(q.t23 > 0.0) || !(q.t34 > 0.0))
    throw CausalityError("lower four-point needs the chain x1 << x2 << x3 << x4");
  Verdict v;
  if (size_bound_exceeded(param, q)) {
    v.skipped = true;
    v.skipReason = "size-bound";
    return v;
  }
  // Configuration 1: triangles (x1,x2,x4) and (x1,x3,x4) share the edge x1x4.
  const AxisFrame f0 = axis_frame(param, 0.0);
  const double w2 = comparison_angle(param, {q.t12, q.t24, q.t14}, Vertex::X);
  const ModelPoint x2a = place_from_frame(param, f0, w2, 1.0, q.t12);
  const double w3 = comparison_angle(param, {q.t13, q.t34, q.t14}, Vertex::X);
  const ModelPoint x3a = place_from_frame(param, f0, w3, cfg.lower1Opposite ? -1.0 : 1.0, q.t13);
  const double m1 = q.t23 - model_tau_mag(param, x2a, x3a);
  // Configuration 2: triangles (x1,x2,x3) and (x2,x3,x4) share the edge x2x3,
  // with x2 at the origin and x3 up the axis.
  const double wy1 = comparison_angle(param, {q.t12, q.t23, q.t13}, Vertex::Y);
  const double s1 = 1.0;
  const ModelPoint x1b = geodesic_point(
      param, f0.pt, std::cosh(wy1) * f0.u + (-s1 * std::sinh(wy1)) * f0.e, -q.t12);
  const AxisFrame f23 = axis_frame(param, q.t23);
  const double wy2 = comparison_angle(param, {q.t23, q.t34, q.t24}, Vertex::Y);
  const double s2 = cfg.lower2Same ? s1 : -s1;
  const ModelPoint x4b = geodesic_point(
      param, f23.pt, std::cosh(wy2) * f23.u + (s2 * std::sinh(wy2)) * f23.e, q.t34);
  const double m2 = model_tau_mag(param, x1b, x4b) - q.t14;
  v.margins = {m1, m2};
  v.pass = m1 >= -tol && m2 >= -tol;
  return v;
}

int scan_thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("LORCOMP_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

namespace {

struct ScanPartial {
  long enumerated = 0, tested = 0, skipped = 0, violations = 0;
  std::map<std::string, long> skipReasons;
  std::vector<ScanWitness> worst;
  double worstMargin = kInf;

  void addMargin(const std::array<int, 4>& idx, int mi, double m, double tol, int cap) {
    if (m < worstMargin) worstMargin = m;
    if (m < -tol) ++violations;
    worst.push_back({idx, mi, m});
    if (worst.size() > static_cast<std::size_t>(8 * cap)) shrink(cap);
  }
  void shrink(int cap) {
    std::sort(worst.begin(), worst.end(), [](const ScanWitness& a, const ScanWitness& b) {
      if (a.margin != b.margin) return a.margin < b.margin;
      if (a.idx != b.idx) return a.idx < b.idx;
      return a.marginIndex < b.marginIndex;
    });
    if (worst.size() > static_cast<std::size_t>(cap)) worst.resize(static_cast<std::size_t>(cap));
  }
};

}  // namespace

ScanReport scan_four_point(const FiniteLorentzSpace& sp, const CurvatureParam& param,
                           Side side, double tol, int witnessCap) {
  const auto start = std::chrono::steady_clock::now();
  const int n = sp.n;
  const int threads = std::min(scan_thread_count(), std::max(1, n));
  std::vector<ScanPartial> parts(static_cast<std::size_t>(threads));

  auto worker = [&](int w) {
    ScanPartial& part = parts[static_cast<std::size_t>(w)];
    for (int i = w; i < n; i += threads)
      for (int j = 0; j < n; ++j) {
        if (j == i || !(sp.tauAt(i, j) > 0.0)) continue;
        for (int k = 0; k < n; ++k) {
          if (k == i || k == j || !(sp.tauAt(j, k) > 0.0)) continue;
          for (int l = 0; l < n; ++l) {
            if (l == i || l == j || l == k) continue;
            const bool chain = side == Side::Lower ? sp.tauAt(k, l) > 0.0 : sp.causalAt(k, l);
            if (!chain) continue;
            ++part.enumerated;
            const QuadrupleTaus q{sp.tauAt(i, j), sp.tauAt(i, k), sp.tauAt(i, l),
                                  sp.tauAt(j, k), sp.tauAt(j, l), sp.tauAt(k, l)};
            try {
              const Verdict v = side == Side::Lower ? four_point_lower_margins(param, q, tol)
                                                    : four_point_upper_margin(param, q, tol);
              if (v.skipped) {
                ++part.skipped;
                ++part.skipReasons[v.skipReason];
                continue;
              }
              ++part.tested;
              for (std::size_t mi = 0; mi < v.margins.size(); ++mi)
                part.addMargin({i, j, k, l}, static_cast<int>(mi), v.margins[mi], tol,
                               witnessCap);
            } catch (const std::runtime_error&) {
              ++part.skipped;
              ++part.skipReasons["realization-infeasible"];
            }
          }
        }
      }
    part.shrink(witnessCap);
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  ScanReport rep;
  rep.check = "four-point";
  rep.K = param.K;
  rep.side = side;
  rep.tol = tol;
  for (const ScanPartial& p : parts) {
    rep.enumerated += p.enumerated;
    rep.tested += p.tested;
    rep.skipped += p.skipped;
    rep.violations += p.violations;
    for (const auto& [reason, count] : p.skipReasons) rep.skipReasons[reason] += count;
    rep.worst.insert(rep.worst.end(), p.worst.begin(), p.worst.end());
    rep.worstMargin = std::min(rep.worstMargin, p.worstMargin);
  }
  std::sort(rep.worst.begin(), rep.worst.end(), [](const ScanWitness& a, const ScanWitness& b) {
    if (a.margin != b.margin) return a.margin < b.margin;
    if (a.idx != b.idx) return a.idx < b.idx;
    return a.marginIndex < b.marginIndex;
  });
  if (rep.worst.size() > static_cast<std::size_t>(witnessCap))
    rep.worst.resize(static_cast<std::size_t>(witnessCap));
  rep.runtimeSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<int> find_eps_mu_midpoints(const FiniteLorentzSpace& sp, int i, int j, double mu,
                                       double eps) {
  if (i < 0 || j < 0 || i >= sp.n || j >= sp.n) throw RangeError("index out of range");
  if (!(mu > 0.0) || !(mu < 1.0)) throw RangeError("mu must lie in (0,1)");
  if (!(eps > 0.0)) throw RangeError("eps must be positive");
  const double t = sp.tauAt(i, j);
  if (!(t > 0.0)) throw CausalityError("eps-mu midpoints need a timelike pair");
  std::vector<int> out;
  for (int m = 0; m < sp.n; ++m)
    if (std::abs(sp.tauAt(i, m) - mu * t) < eps && std::abs(sp.tauAt(m, j) - (1.0 - mu) * t) < eps)
      out.push_back(m);
  return out;
}

EpsMuReport eps_mu_condition_scan(const FiniteLorentzSpace& sp, const CurvatureParam& param,
                                  Side side, std::vector<double> epsList,
                                  std::vector<double> muList, double tol) {
  if (epsList.empty()) epsList = {1e-1, 1e-2, 1e-3};
  if (muList.empty()) muList = {0.25, 0.5, 0.75};
  std::sort(epsList.rbegin(), epsList.rend());
  EpsMuReport rep;
  rep.eps = epsList;
  rep.mu = muList;
  rep.tol = tol;
  rep.g.assign(epsList.size(), 0.0);
  rep.midpoints.assign(epsList.size(), 0);
  const int n = sp.n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (b == a || !(sp.tauAt(a, b) > 0.0)) continue;
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b || !(sp.tauAt(b, c) > 0.0) || !(sp.tauAt(a, c) > 0.0)) continue;
        ++rep.triangles;
        const TriangleSides sides{sp.tauAt(a, b), sp.tauAt(b, c), sp.tauAt(a, c)};
        RealizedTriangle tri;
        try {
          tri = realize_triangle(param, sides);
        } catch (const std::runtime_error&) {
          ++rep.skipped;
          continue;
        }
        // The three designated pairs with their opposite vertex.
        const std::array<std::array<int, 3>, 3> pairs = {{{a, b, c}, {b, c, a}, {a, c, b}}};
        const std::array<std::pair<const ModelPoint*, const ModelPoint*>, 3> modelPairs = {
            {{&tri.px, &tri.py}, {&tri.py, &tri.pz}, {&tri.px, &tri.pz}}};
        const std::array<const ModelPoint*, 3> opposite = {&tri.pz, &tri.px, &tri.py};
        for (std::size_t pi = 0; pi < 3; ++pi) {
          const int i = pairs[pi][0], j = pairs[pi][1], third = pairs[pi][2];
          const double tpair = sp.tauAt(i, j);
          for (double mu : muList) {
            ModelPoint mbar;
            try {
              mbar = geodesic_interpolate(param, *modelPairs[pi].first, *modelPairs[pi].second,
                                          mu * tpair);
            } catch (const std::runtime_error&) {
              continue;
            }
            const double tcmp = model_tau_mag(param, *opposite[pi], mbar);
            for (std::size_t e = 0; e < epsList.size(); ++e) {
              for (int m : find_eps_mu_midpoints(sp, i, j, mu, epsList[e])) {
                const double tact = std::max(sp.tauAt(third, m), sp.tauAt(m, third));
                if (!(tact > 0.0)) continue;
                ++rep.midpoints[e];
                const double dev =
                    side == Side::Lower ? std::max(0.0, tcmp - tact) : std::max(0.0, tact - tcmp);
                if (dev > rep.g[e]) rep.g[e] = dev;
              }
            }
          }
        }
      }
    }
  bool nonincreasing = true;
  for (std::size_t e = 1; e < rep.g.size(); ++e)
    if (rep.g[e] > rep.g[e - 1] + 1e-9) nonincreasing = false;
  rep.pass = nonincreasing && rep.g.back() <= tol;
  return rep;
}

TriangleCheckReport triangle_condition_check(const AmbientSpec& spec,
                                             const std::array<Vec3, 3>& verts,
                                             const CurvatureParam& param, Side side,
                                             int samplesPerSide, double tol) {
  if (samplesPerSide < 1) throw RangeError("need at least one sample per side");
  const double a = ambient_tau_ordered(spec, verts[0], verts[1]);
  const double b = ambient_tau_ordered(spec, verts[1], verts[2]);
  const double c = ambient_tau_ordered(spec, verts[0], verts[2]);
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
    throw CausalityError("vertices must form a timelike chain x << y << z");
  TriangleCheckReport rep;
  if (param.K < 0.0 && c >= param.diameter) {
    rep.skipped = true;
    rep.skipReason = "size-bound";
    return rep;
  }
  const RealizedTriangle tri = realize_triangle(param, {a, b, c});
  // Realizer endpoints in the ambient and the model, plus the opposite vertex.
  const std::array<std::array<int, 3>, 3> sides = {{{0, 1, 2}, {1, 2, 0}, {0, 2, 1}}};
  const std::array<std::pair<const ModelPoint*, const ModelPoint*>, 3> modelPairs = {
      {{&tri.px, &tri.py}, {&tri.py, &tri.pz}, {&tri.px, &tri.pz}}};
  const std::array<const ModelPoint*, 3> opposite = {&tri.pz, &tri.px, &tri.py};
  const std::array<double, 3> lens = {a, b, c};
  for (std::size_t si = 0; si < 3; ++si) {
    for (int k = 1; k <= samplesPerSide; ++k) {
      const double frac = static_cast<double>(k) / (samplesPerSide + 1);
      const double offset = frac * lens[si];
      const Vec3 m = ambient_geodesic(spec, verts[static_cast<std::size_t>(sides[si][0])],
                                      verts[static_cast<std::size_t>(sides[si][1])], offset);
      const ModelPoint mbar = geodesic_interpolate(param, *modelPairs[si].first,
                                                   *modelPairs[si].second, offset);
      const int third = sides[si][2];
      const Vec3& tv = verts[static_cast<std::size_t>(third)];
      const double tact =
          std::max(ambient_tau_ordered(spec, tv, m), ambient_tau_ordered(spec, m, tv));
      const TauClass mc = tau_model(param, *opposite[si], mbar);
      const double tcmp =
          (mc.cls == CausalClass::TimelikeFuture || mc.cls == CausalClass::TimelikePast) ? mc.tau
                                                                                        : 0.0;
      const double dev =
          side == Side::Lower ? std::max(0.0, tcmp - tact) : std::max(0.0, tact - tcmp);
      ++rep.samples;
      rep.perRealizer[si] = std::max(rep.perRealizer[si], dev);
      rep.worstDeviation = std::max(rep.worstDeviation, dev);
    }
  }
  rep.pass = rep.worstDeviation <= tol;
  return rep;
}

}  // namespace lorcomp
