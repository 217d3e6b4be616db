#include "lorcomp/lorspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <filesystem>

#include <json.hpp>

namespace lorcomp {

namespace {
constexpr double kQuadricTol = 1e-9;
constexpr double kNullBand = 1e-12;
}  // namespace

FiniteLorentzSpace FiniteLorentzSpace::zeros(int n) {
  if (n < 0) throw StructuralError("point count must be nonnegative");
  FiniteLorentzSpace s;
  s.n = n;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  s.d.assign(nn, 0.0);
  s.tau.assign(nn, 0.0);
  s.causal.assign(nn, 0);
  for (int i = 0; i < n; ++i) s.setCausal(i, i, true);
  return s;
}

double AmbientSpec::curvatureK() const {
  switch (kind) {
    case Kind::DeSitter2: return 1.0 / (s * s);
    case Kind::AntiDeSitter2: return -1.0 / (s * s);
    default: return 0.0;
  }
}

CurvatureParam AmbientSpec::param2d() const {
  if (kind == Kind::Minkowski3)
    throw StructuralError("minkowski-3 has no 2-D model-plane delegate");
  return CurvatureParam::fromK(curvatureK());
}

std::string AmbientSpec::tag() const {
  switch (kind) {
    case Kind::Minkowski2: return "minkowski-2";
    case Kind::Minkowski3: return "minkowski-3";
    case Kind::DeSitter2: return "desitter-2";
    case Kind::AntiDeSitter2: return "antidesitter-2";
  }
  return "";
}

AmbientSpec AmbientSpec::fromTag(const std::string& tag, double s) {
  AmbientSpec spec;
  spec.s = s;
  if (tag == "minkowski-2") spec.kind = Kind::Minkowski2;
  else if (tag == "minkowski-3") spec.kind = Kind::Minkowski3;
  else if (tag == "desitter-2") spec.kind = Kind::DeSitter2;
  else if (tag == "antidesitter-2") spec.kind = Kind::AntiDeSitter2;
  else throw ParseError("unknown ambient tag: " + tag);
  if (spec.curved() && !(s > 0.0)) throw RangeError("ambient scale must be positive");
  return spec;
}

double ambient_form(const AmbientSpec& spec, const Vec3& u, const Vec3& v) {
  switch (spec.kind) {
    case AmbientSpec::Kind::Minkowski2: return u[0] * v[0] - u[1] * v[1];
    case AmbientSpec::Kind::Minkowski3: return u[0] * v[0] - u[1] * v[1] - u[2] * v[2];
    default: return model_form(spec.param2d(), u, v);
  }
}

void check_ambient_point(const AmbientSpec& spec, const Vec3& p) {
  for (double c : p)
    if (!std::isfinite(c)) throw InvalidPointError("non-finite coordinate");
  if (spec.curved()) check_model_point(spec.param2d(), ModelPoint{p});
  if (spec.flat2() && p[2] != 0.0)
    throw InvalidPointError("minkowski-2 point must have zero third coordinate");
}

TauClass ambient_tau(const AmbientSpec& spec, const Vec3& p, const Vec3& q) {
  if (spec.kind == AmbientSpec::Kind::Minkowski3) {
    check_ambient_point(spec, p);
    check_ambient_point(spec, q);
    const Vec3 dv = q - p;
    const double q2 = dv[0] * dv[0] - dv[1] * dv[1] - dv[2] * dv[2];
    const double band =
        kNullBand * std::max(dv[0] * dv[0] + dv[1] * dv[1] + dv[2] * dv[2], 1.0);
    TauClass out;
    if (std::abs(q2) <= band) out.cls = CausalClass::Null;
    else if (q2 > 0.0) {
      out.tau = std::sqrt(q2);
      out.cls = dv[0] > 0.0 ? CausalClass::TimelikeFuture : CausalClass::TimelikePast;
    }
    return out;
  }
  return tau_model(spec.param2d(), ModelPoint{p}, ModelPoint{q});
}

double ambient_tau_ordered(const AmbientSpec& spec, const Vec3& p, const Vec3& q) {
  const TauClass tc = ambient_tau(spec, p, q);
  return tc.cls == CausalClass::TimelikeFuture ? tc.tau : 0.0;
}

double ambient_dist(const AmbientSpec& spec, const Vec3& p, const Vec3& q) {
  check_ambient_point(spec, p);
  check_ambient_point(spec, q);
  const Vec3 dv = q - p;
  return std::sqrt(dv[0] * dv[0] + dv[1] * dv[1] + dv[2] * dv[2]);
}

Vec3 ambient_unit_tangent(const AmbientSpec& spec, const Vec3& p, const Vec3& q) {
  const TauClass tc = ambient_tau(spec, p, q);
  if (tc.cls != CausalClass::TimelikeFuture)
    throw CausalityError("tangent requires a strictly timelike future-directed pair");
  if (spec.kind == AmbientSpec::Kind::Minkowski3) return (1.0 / tc.tau) * (q - p);
  return unit_tangent(spec.param2d(), ModelPoint{p}, ModelPoint{q});
}

Vec3 ambient_exp(const AmbientSpec& spec, const Vec3& p, const Vec3& u, double T) {
  if (spec.kind == AmbientSpec::Kind::Minkowski3) {
    check_ambient_point(spec, p);
    if (std::abs(ambient_form(spec, u, u) - 1.0) > kTolExact)
      throw InvalidPointError("tangent is not a unit future timelike vector");
    return p + T * u;
  }
  return geodesic_point(spec.param2d(), ModelPoint{p}, u, T).c;
}

Vec3 ambient_geodesic(const AmbientSpec& spec, const Vec3& p, const Vec3& q, double u) {
  const TauClass tc = ambient_tau(spec, p, q);
  if (tc.cls != CausalClass::TimelikeFuture)
    throw CausalityError("geodesic requires a strictly timelike future-directed pair");
  if (u < -kTolExact || u > tc.tau + kTolExact)
    throw RangeError("geodesic parameter outside [0, tau]");
  return ambient_exp(spec, p, ambient_unit_tangent(spec, p, q), std::clamp(u, 0.0, tc.tau));
}

Vec3 chart_to_ambient(const AmbientSpec& spec, const std::vector<double>& chart) {
  if (static_cast<int>(chart.size()) != spec.chartDim())
    throw StructuralError("chart coordinate count does not match ambient kind");
  const double s = spec.s;
  switch (spec.kind) {
    case AmbientSpec::Kind::Minkowski2: return {chart[0], chart[1], 0.0};
    case AmbientSpec::Kind::Minkowski3: return {chart[0], chart[1], chart[2]};
    case AmbientSpec::Kind::DeSitter2: {
      const double t = chart[0] / s, x = chart[1] / s;
      return {s * std::sinh(t), s * std::cosh(t) * std::cos(x), s * std::cosh(t) * std::sin(x)};
    }
    case AmbientSpec::Kind::AntiDeSitter2: {
      const double t = chart[0] / s, x = chart[1] / s;
      return {s * std::cos(t) * std::cosh(x), s * std::sin(t) * std::cosh(x), s * std::sinh(x)};
    }
  }
  throw StructuralError("unreachable ambient kind");
}

namespace {

struct WorstTracker {
  double worst = 0.0;
  std::vector<int> witness;
  long count = 0;
  void add(double magnitude, std::initializer_list<int> idx) {
    ++count;
    if (magnitude > worst || witness.empty()) {
      worst = magnitude;
      witness = idx;
    }
  }
};

void flush(AxiomReport& rep, const std::string& axiom, const WorstTracker& t) {
  if (t.count == 0) return;
  rep.pass = false;
  rep.violations.push_back({axiom, t.witness, t.worst, t.count});
}

}  // namespace

AxiomReport validate_axioms(const FiniteLorentzSpace& sp, double tol) {
  const std::size_t nn = static_cast<std::size_t>(sp.n) * sp.n;
  if (sp.d.size() != nn || sp.tau.size() != nn || sp.causal.size() != nn)
    throw StructuralError("matrix sizes do not match the point count");
  AxiomReport rep;
  WorstTracker dSym, dDiag, dNeg, dTri, tauNeg, tauCausal, chrono, reflexive, transitive, revTri;
  const int n = sp.n;
  for (int i = 0; i < n; ++i) {
    if (std::abs(sp.dAt(i, i)) > tol) dDiag.add(std::abs(sp.dAt(i, i)), {i});
    if (!sp.causalAt(i, i)) reflexive.add(1.0, {i});
    for (int j = 0; j < n; ++j) {
      if (sp.dAt(i, j) < -tol) dNeg.add(-sp.dAt(i, j), {i, j});
      if (sp.tauAt(i, j) < -tol) tauNeg.add(-sp.tauAt(i, j), {i, j});
      if (j > i && std::abs(sp.dAt(i, j) - sp.dAt(j, i)) > tol)
        dSym.add(std::abs(sp.dAt(i, j) - sp.dAt(j, i)), {i, j});
      if (i != j && sp.tauAt(i, j) > tol) {
        if (!sp.causalAt(i, j)) tauCausal.add(sp.tauAt(i, j), {i, j});
        if (sp.tauAt(j, i) > tol)
          chrono.add(std::min(sp.tauAt(i, j), sp.tauAt(j, i)), {i, j});
      }
      if (i == j && sp.tauAt(i, i) > tol) chrono.add(sp.tauAt(i, i), {i});
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double dgap = sp.dAt(i, k) - sp.dAt(i, j) - sp.dAt(j, k);
        if (dgap > tol) dTri.add(dgap, {i, j, k});
        if (i != j && j != k && sp.causalAt(i, j) && sp.causalAt(j, k)) {
          if (!sp.causalAt(i, k)) transitive.add(1.0, {i, j, k});
          const double gap = sp.tauAt(i, j) + sp.tauAt(j, k) - sp.tauAt(i, k);
          if (gap > tol) revTri.add(gap, {i, j, k});
        }
      }
  flush(rep, "d-symmetric", dSym);
  flush(rep, "d-zero-diagonal", dDiag);
  flush(rep, "d-nonnegative", dNeg);
  flush(rep, "d-triangle-inequality", dTri);
  flush(rep, "tau-nonnegative", tauNeg);
  flush(rep, "tau-implies-causal", tauCausal);
  flush(rep, "chronology", chrono);
  flush(rep, "causal-reflexive", reflexive);
  flush(rep, "causal-transitive", transitive);
  flush(rep, "reverse-triangle-inequality", revTri);
  rep.notApplicable.push_back("tau-lower-semicontinuity");
  return rep;
}

FiniteLorentzSpace space_from_points(const AmbientSpec& spec, const std::vector<Vec3>& pts) {
  const int n = static_cast<int>(pts.size());
  FiniteLorentzSpace sp = FiniteLorentzSpace::zeros(n);
  sp.ambient = spec.tag();
  sp.scale = spec.s;
  sp.coords.reserve(pts.size());
  for (const Vec3& p : pts) {
    check_ambient_point(spec, p);
    sp.coords.push_back({p[0], p[1], p[2]});
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      sp.setD(i, j, ambient_dist(spec, pts[i], pts[j]));
      const TauClass tc = ambient_tau(spec, pts[i], pts[j]);
      if (tc.cls == CausalClass::TimelikeFuture) {
        sp.setTau(i, j, tc.tau);
        sp.setCausal(i, j, true);
      }
    }
  return sp;
}

std::vector<Vec3> append_midpoints(const AmbientSpec& spec, std::vector<Vec3> pts, int maxN) {
  const std::size_t base = pts.size();
  for (std::size_t i = 0; i < base && static_cast<int>(pts.size()) < maxN; ++i)
    for (std::size_t j = i + 1; j < base && static_cast<int>(pts.size()) < maxN; ++j) {
      const TauClass tc = ambient_tau(spec, pts[i], pts[j]);
      if (tc.tau <= 1e-6) continue;
      if (tc.cls == CausalClass::TimelikeFuture)
        pts.push_back(ambient_geodesic(spec, pts[i], pts[j], 0.5 * tc.tau));
      else if (tc.cls == CausalClass::TimelikePast)
        pts.push_back(ambient_geodesic(spec, pts[j], pts[i], 0.5 * tc.tau));
    }
  return pts;
}

FiniteLorentzSpace sprinkle(const AmbientSpec& spec, const Box& region, int n,
                            std::uint64_t seed, int midpointTarget) {
  if (n < 0) throw GenerationError("point count must be nonnegative");
  if (static_cast<int>(region.ranges.size()) != spec.chartDim())
    throw GenerationError("region dimension does not match ambient kind");
  for (const auto& r : region.ranges)
    if (!(r[0] < r[1])) throw GenerationError("empty region");
  Rng rng(seed);
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  std::vector<double> chart(region.ranges.size());
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < chart.size(); ++k)
      chart[k] = rng.uniform(region.ranges[k][0], region.ranges[k][1]);
    pts.push_back(chart_to_ambient(spec, chart));
  }
  if (midpointTarget > n) pts = append_midpoints(spec, std::move(pts), midpointTarget);
  return space_from_points(spec, pts);
}

FiniteLorentzSpace chain_space(int n) {
  AmbientSpec spec;
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 1; i <= n; ++i) pts.push_back({static_cast<double>(i), 0.0, 0.0});
  return space_from_points(spec, pts);
}

namespace {

std::vector<double> parse_matrix(const nlohmann::json& j, const std::string& field, int n) {
  if (!j.contains(field)) throw ParseError("missing field: " + field);
  const auto& m = j.at(field);
  if (!m.is_array() || static_cast<int>(m.size()) != n)
    throw StructuralError("field " + field + " is not an n x n matrix");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : m) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw StructuralError("field " + field + " has a non-square row");
    for (const auto& v : row) {
      if (!v.is_number()) throw ParseError("field " + field + " has a non-numeric entry");
      out.push_back(v.get<double>());
    }
  }
  return out;
}

nlohmann::json matrix_json(const std::vector<double>& m, int n) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < n; ++j) row.push_back(m[static_cast<std::size_t>(i) * n + j]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void save_space(const FiniteLorentzSpace& sp, const std::string& path) {
  nlohmann::json j;
  j["schemaVersion"] = 1;
  j["n"] = sp.n;
  j["d"] = matrix_json(sp.d, sp.n);
  j["tau"] = matrix_json(sp.tau, sp.n);
  nlohmann::json causal = nlohmann::json::array();
  for (int i = 0; i < sp.n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int jj = 0; jj < sp.n; ++jj) row.push_back(sp.causalAt(i, jj) ? 1 : 0);
    causal.push_back(std::move(row));
  }
  j["causal"] = std::move(causal);
  if (!sp.ambient.empty()) {
    j["ambient"] = sp.ambient;
    j["scale"] = sp.scale;
  }
  if (!sp.coords.empty()) j["coords"] = sp.coords;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << j.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

FiniteLorentzSpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed space file: ") + e.what());
  }
  if (!j.contains("n")) throw ParseError("missing field: n");
  const int n = j.at("n").get<int>();
  if (n < 0) throw StructuralError("negative point count");
  FiniteLorentzSpace sp = FiniteLorentzSpace::zeros(n);
  sp.d = parse_matrix(j, "d", n);
  sp.tau = parse_matrix(j, "tau", n);
  if (!j.contains("causal")) throw ParseError("missing field: causal");
  const auto& cm = j.at("causal");
  if (!cm.is_array() || static_cast<int>(cm.size()) != n)
    throw StructuralError("field causal is not an n x n matrix");
  for (int i = 0; i < n; ++i) {
    const auto& row = cm[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw StructuralError("field causal has a non-square row");
    for (int jj = 0; jj < n; ++jj) {
      const auto& v = row[static_cast<std::size_t>(jj)];
      if (!v.is_number_integer()) throw ParseError("field causal has a non-0/1 entry");
      const int b = v.get<int>();
      if (b != 0 && b != 1) throw ParseError("field causal has a non-0/1 entry");
      sp.setCausal(i, jj, b == 1);
    }
  }
  if (j.contains("ambient")) {
    sp.ambient = j.at("ambient").get<std::string>();
    sp.scale = j.value("scale", 1.0);
  }
  if (j.contains("coords")) {
    sp.coords = j.at("coords").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(sp.coords.size()) != n)
      throw StructuralError("coords row count does not match n");
  }
  return sp;
}

}  // namespace lorcomp
