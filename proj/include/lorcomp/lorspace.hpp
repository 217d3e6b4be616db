#ifndef LORCOMP_LORSPACE_HPP_
#define LORCOMP_LORSPACE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "lorcomp/common.hpp"
#include "lorcomp/model2d.hpp"

namespace lorcomp {

// A finite Lorentzian pre-length space: point indices 0..n-1, a background
// metric d, the time separation tau, and the causal relation as matrices.
struct FiniteLorentzSpace {
  int n = 0;
  std::vector<double> d;        // n*n, row-major
  std::vector<double> tau;      // n*n, row-major
  std::vector<std::uint8_t> causal;  // n*n, row-major, 0/1
  std::string ambient;          // generating ambient tag, "" if hand-authored
  double scale = 1.0;           // ambient scale s when tagged
  std::vector<std::vector<double>> coords;  // optional n x k ambient coordinates

  double dAt(int i, int j) const { return d[static_cast<std::size_t>(i) * n + j]; }
  double tauAt(int i, int j) const { return tau[static_cast<std::size_t>(i) * n + j]; }
  bool causalAt(int i, int j) const { return causal[static_cast<std::size_t>(i) * n + j] != 0; }
  void setD(int i, int j, double v) { d[static_cast<std::size_t>(i) * n + j] = v; }
  void setTau(int i, int j, double v) { tau[static_cast<std::size_t>(i) * n + j] = v; }
  void setCausal(int i, int j, bool v) {
    causal[static_cast<std::size_t>(i) * n + j] = v ? 1 : 0;
  }

  static FiniteLorentzSpace zeros(int n);
};

struct AmbientSpec {
  enum class Kind { Minkowski2, Minkowski3, DeSitter2, AntiDeSitter2 };
  Kind kind = Kind::Minkowski2;
  double s = 1.0;

  bool curved() const { return kind == Kind::DeSitter2 || kind == Kind::AntiDeSitter2; }
  bool flat2() const { return kind == Kind::Minkowski2; }
  // Curvature of the 2-D kinds (minkowski-3 reports 0).
  double curvatureK() const;
  CurvatureParam param2d() const;
  std::string tag() const;
  static AmbientSpec fromTag(const std::string& tag, double s);
  // Number of chart coordinates for sprinkling regions.
  int chartDim() const { return kind == Kind::Minkowski3 ? 3 : 2; }
};

struct AxiomViolation {
  std::string axiom;
  std::vector<int> witness;  // indices of the worst witness
  double magnitude = 0.0;
  long count = 0;            // how many witnesses violated this axiom
};

struct AxiomReport {
  bool pass = true;
  std::vector<AxiomViolation> violations;
  std::vector<std::string> notApplicable;  // axioms not checkable on finite sets
};

// --- analytic ambient operations (points in ambient R^3 coordinates) ---

double ambient_form(const AmbientSpec& spec, const Vec3& u, const Vec3& v);
void check_ambient_point(const AmbientSpec& spec, const Vec3& p);
TauClass ambient_tau(const AmbientSpec& spec, const Vec3& p, const Vec3& q);
double ambient_tau_ordered(const AmbientSpec& spec, const Vec3& p, const Vec3& q);
// Background Riemannian distance: Euclidean for flat kinds, ambient chordal
// for curved kinds.
double ambient_dist(const AmbientSpec& spec, const Vec3& p, const Vec3& q);
// Point at tau-parameter u along the timelike geodesic from p to q.
Vec3 ambient_geodesic(const AmbientSpec& spec, const Vec3& p, const Vec3& q, double u);
// Unit future timelike tangent at p toward q (p << q).
Vec3 ambient_unit_tangent(const AmbientSpec& spec, const Vec3& p, const Vec3& q);
// Exponential: tau-arclength T along unit future timelike tangent u at p.
Vec3 ambient_exp(const AmbientSpec& spec, const Vec3& p, const Vec3& u, double T);
// Chart embedding: (t, x[, y]) intrinsic coordinates to ambient R^3.
Vec3 chart_to_ambient(const AmbientSpec& spec, const std::vector<double>& chart);

// --- finite-space construction and validation ---

AxiomReport validate_axioms(const FiniteLorentzSpace& space, double tol);

struct Box {
  std::vector<std::array<double, 2>> ranges;  // per chart coordinate
};

FiniteLorentzSpace sprinkle(const AmbientSpec& spec, const Box& region, int n,
                            std::uint64_t seed, int midpointTarget = 0);
// Append exact geodesic midpoints of timelike pairs (pairs in index order)
// until the point count reaches maxN.
std::vector<Vec3> append_midpoints(const AmbientSpec& spec, std::vector<Vec3> pts, int maxN);
// n points on a flat time axis at t = 1..n: tau(i,j) = j - i.
FiniteLorentzSpace chain_space(int n);
// Build a space from explicit ambient points (exact tau/causal/d).
FiniteLorentzSpace space_from_points(const AmbientSpec& spec, const std::vector<Vec3>& pts);

void save_space(const FiniteLorentzSpace& space, const std::string& path);
FiniteLorentzSpace load_space(const std::string& path);

}  // namespace lorcomp

#endif  // LORCOMP_LORSPACE_HPP_
