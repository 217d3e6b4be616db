#include "lorcomp/cone.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <filesystem>

#include <json.hpp>

namespace lorcomp {

namespace {
constexpr double kRadicalClamp = 1e-12;
}

FiniteMetricSpace FiniteMetricSpace::zeros(int n) {
  if (n < 0) throw StructuralError("point count must be nonnegative");
  FiniteMetricSpace m;
  m.n = n;
  m.dY.assign(static_cast<std::size_t>(n) * n, 0.0);
  return m;
}

void FiniteMetricSpace::validate(double tol) const {
  if (dY.size() != static_cast<std::size_t>(n) * n)
    throw StructuralError("metric matrix size does not match the point count");
  for (int i = 0; i < n; ++i) {
    if (std::abs(at(i, i)) > tol) throw StructuralError("metric diagonal is not zero");
    for (int j = 0; j < n; ++j) {
      if (at(i, j) < -tol) throw StructuralError("negative metric entry");
      if (std::abs(at(i, j) - at(j, i)) > tol) throw StructuralError("metric is not symmetric");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (at(i, k) > at(i, j) + at(j, k) + tol)
          throw StructuralError("metric violates the triangle inequality");
}

double cone_metric(double r1, double r2, double dY) {
  if (r1 < 0.0 || r2 < 0.0) throw RangeError("cone radius must be nonnegative");
  if (dY < 0.0) throw RangeError("base distance must be nonnegative");
  const double c = std::cos(std::min(kPi, dY));
  return std::sqrt(std::max(0.0, r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * c));
}

ConeTau cone_tau(double r1, double r2, double dY) {
  if (r1 < 0.0 || r2 < 0.0) throw RangeError("cone radius must be nonnegative");
  if (dY < 0.0) throw RangeError("base distance must be nonnegative");
  ConeTau out;
  double radical = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cosh(dY);
  if (std::abs(radical) <= kRadicalClamp) radical = 0.0;
  if (radical < 0.0 || r1 > r2) return out;
  out.causal = true;
  out.tau = std::sqrt(radical);
  out.timelike = out.tau > 0.0;
  return out;
}

FiniteLorentzSpace build_cone_space_points(const FiniteMetricSpace& base,
                                           const std::vector<ConePoint>& pts,
                                           bool includeApex) {
  base.validate(kTolExact);
  std::vector<ConePoint> all;
  if (includeApex) all.push_back(ConePoint{0.0, 0});
  for (const ConePoint& p : pts) {
    if (!(p.r > 0.0)) throw StructuralError("cone point radius must be positive");
    if (p.baseIndex < 0 || p.baseIndex >= base.n)
      throw StructuralError("cone point base index out of range");
    all.push_back(p);
  }
  const int n = static_cast<int>(all.size());
  FiniteLorentzSpace sp = FiniteLorentzSpace::zeros(n);
  sp.ambient = "cone";
  sp.coords.reserve(all.size());
  for (const ConePoint& p : all)
    sp.coords.push_back({p.r, static_cast<double>(p.baseIndex)});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dy = base.at(all[i].baseIndex, all[j].baseIndex);
      sp.setD(i, j, cone_metric(all[i].r, all[j].r, dy));
      const ConeTau ct = cone_tau(all[i].r, all[j].r, dy);
      // Apex representatives coincide; distinct points need a strict relation.
      const bool same = all[i].r == all[j].r &&
                        (all[i].r == 0.0 || all[i].baseIndex == all[j].baseIndex);
      if (ct.causal && !same) {
        sp.setTau(i, j, ct.tau);
        sp.setCausal(i, j, true);
      }
    }
  return sp;
}

FiniteLorentzSpace build_cone_space(const FiniteMetricSpace& base,
                                    const std::vector<double>& radii, bool includeApex) {
  std::vector<ConePoint> pts;
  pts.reserve(radii.size() * static_cast<std::size_t>(base.n));
  for (double r : radii)
    for (int y = 0; y < base.n; ++y) pts.push_back(ConePoint{r, y});
  return build_cone_space_points(base, pts, includeApex);
}

TransferQuantities transfer_quantities(double r2, double r3, double d23) {
  const ConeTau ct = cone_tau(r2, r3, d23);
  if (!ct.timelike) throw CausalityError("transfer quantities require a timelike cone pair");
  TransferQuantities q;
  q.mu = r2 / (r2 + r3);
  q.r_m = 2.0 * r2 * r3 * std::cosh(d23 / 2.0) / (r2 + r3);
  q.epsCoefficient = r2 * r3 * std::sinh(d23) / ct.tau;
  return q;
}

BaseCheckReport base_curvature_minus1_check(const FiniteMetricSpace& base,
                                            const std::vector<double>& epsList, double tol) {
  base.validate(kTolExact);
  if (epsList.empty()) throw RangeError("eps schedule must be nonempty");
  BaseCheckReport rep;
  rep.eps = epsList;
  rep.worstExcess.assign(epsList.size(), 0.0);
  rep.witness.assign(epsList.size(), {-1, -1, -1, -1});
  rep.midpointsTested.assign(epsList.size(), 0);
  const int n = base.n;
  for (int y2 = 0; y2 < n; ++y2)
    for (int y3 = y2 + 1; y3 < n; ++y3) {
      const double d23 = base.at(y2, y3);
      if (d23 <= 1e-12) continue;
      for (int y1 = 0; y1 < n; ++y1) {
        if (y1 == y2 || y1 == y3) continue;
        const double d12 = base.at(y1, y2), d13 = base.at(y1, y3);
        if (d12 <= 1e-12 || d13 <= 1e-12) continue;
        ++rep.triangles;
        const auto tri = realize_h2_triangle(d12, d13, d23);
        const double cmp = h2_distance(tri[0], h2_midpoint(tri[1], tri[2]));
        for (int m = 0; m < n; ++m) {
          const double a = base.at(y2, m), b = base.at(m, y3);
          const double excess = std::max(0.0, base.at(y1, m) - cmp);
          for (std::size_t e = 0; e < epsList.size(); ++e) {
            const double half = d23 / 2.0 + epsList[e];
            if (a > half || b > half) continue;
            ++rep.midpointsTested[e];
            if (excess > rep.worstExcess[e]) {
              rep.worstExcess[e] = excess;
              rep.witness[e] = {y1, y2, y3, m};
            }
          }
        }
      }
    }
  const std::size_t best =
      std::min_element(epsList.begin(), epsList.end()) - epsList.begin();
  rep.pass = rep.worstExcess[best] <= tol;
  return rep;
}

std::pair<double, double> polar_map(double r, double y) {
  if (r < 0.0) throw RangeError("cone radius must be nonnegative");
  return {r * std::cosh(y), r * std::sinh(y)};
}

namespace {

FiniteMetricSpace metric_from_h2(const std::vector<HPoint>& pts) {
  FiniteMetricSpace m = FiniteMetricSpace::zeros(static_cast<int>(pts.size()));
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) {
      const double d = h2_distance(pts[static_cast<std::size_t>(i)],
                                   pts[static_cast<std::size_t>(j)]);
      m.set(i, j, d);
      m.set(j, i, d);
    }
  return m;
}

}  // namespace

H2Base h2_disc_base(int n, double radius, std::uint64_t seed, bool withMidpoints) {
  if (n < 0 || !(radius > 0.0)) throw GenerationError("need n >= 0 and a positive radius");
  Rng rng(seed);
  H2Base out;
  for (int i = 0; i < n; ++i) {
    const double rho = rng.uniform(0.0, radius);
    const double th = rng.uniform(0.0, 2.0 * kPi);
    out.points.push_back(
        HPoint{{std::cosh(rho), std::sinh(rho) * std::cos(th), std::sinh(rho) * std::sin(th)}});
  }
  if (withMidpoints)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        out.points.push_back(h2_midpoint(out.points[static_cast<std::size_t>(i)],
                                         out.points[static_cast<std::size_t>(j)]));
  out.metric = metric_from_h2(out.points);
  return out;
}

E2Base euclidean_disc_base(int n, double radius, std::uint64_t seed, bool withMidpoints) {
  if (n < 0 || !(radius > 0.0)) throw GenerationError("need n >= 0 and a positive radius");
  Rng rng(seed);
  E2Base out;
  for (int i = 0; i < n; ++i) {
    const double rho = rng.uniform(0.0, radius);
    const double th = rng.uniform(0.0, 2.0 * kPi);
    out.points.push_back({rho * std::cos(th), rho * std::sin(th)});
  }
  if (withMidpoints)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const auto& a = out.points[static_cast<std::size_t>(i)];
        const auto& b = out.points[static_cast<std::size_t>(j)];
        out.points.push_back({(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0});
      }
  const int total = static_cast<int>(out.points.size());
  out.metric = FiniteMetricSpace::zeros(total);
  for (int i = 0; i < total; ++i)
    for (int j = i + 1; j < total; ++j) {
      const double dx = out.points[static_cast<std::size_t>(i)][0] -
                        out.points[static_cast<std::size_t>(j)][0];
      const double dy = out.points[static_cast<std::size_t>(i)][1] -
                        out.points[static_cast<std::size_t>(j)][1];
      const double d = std::hypot(dx, dy);
      out.metric.set(i, j, d);
      out.metric.set(j, i, d);
    }
  return out;
}

H1Base h1_line_base(int n, double halfLength, std::uint64_t seed) {
  if (n < 0 || !(halfLength > 0.0)) throw GenerationError("need n >= 0 and a positive length");
  Rng rng(seed);
  H1Base out;
  for (int i = 0; i < n; ++i) out.positions.push_back(rng.uniform(-halfLength, halfLength));
  out.metric = FiniteMetricSpace::zeros(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.metric.set(i, j, std::abs(out.positions[static_cast<std::size_t>(i)] -
                                    out.positions[static_cast<std::size_t>(j)]));
  return out;
}

FiniteMetricSpace single_point_base() { return FiniteMetricSpace::zeros(1); }

FiniteMetricSpace tree_base(int n, std::uint64_t seed) {
  if (n < 1) throw GenerationError("tree base needs at least one node");
  Rng rng(seed);
  FiniteMetricSpace m = FiniteMetricSpace::zeros(n);
  for (int i = 1; i < n; ++i) {
    const int parent = rng.uniformInt(0, i - 1);
    const double w = rng.uniform(0.2, 1.0);
    for (int j = 0; j < i; ++j) {
      const double d = m.at(parent, j) + w;
      m.set(i, j, d);
      m.set(j, i, d);
    }
  }
  return m;
}

void save_base(const FiniteMetricSpace& base, const std::string& path) {
  nlohmann::json j;
  j["schemaVersion"] = 1;
  j["n"] = base.n;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < base.n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int jj = 0; jj < base.n; ++jj) row.push_back(base.at(i, jj));
    rows.push_back(std::move(row));
  }
  j["dY"] = std::move(rows);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << j.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

FiniteMetricSpace load_base(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed base file: ") + e.what());
  }
  if (!j.contains("n")) throw ParseError("missing field: n");
  const int n = j.at("n").get<int>();
  if (!j.contains("dY")) throw ParseError("missing field: dY");
  const auto& rows = j.at("dY");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw StructuralError("field dY is not an n x n matrix");
  FiniteMetricSpace m = FiniteMetricSpace::zeros(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw StructuralError("field dY has a non-square row");
    for (int jj = 0; jj < n; ++jj) m.set(i, jj, row[static_cast<std::size_t>(jj)].get<double>());
  }
  return m;
}

}  // namespace lorcomp
