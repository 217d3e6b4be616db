#ifndef LORCOMP_CURVCHECK_HPP_
#define LORCOMP_CURVCHECK_HPP_

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lorcomp/common.hpp"
#include "lorcomp/lorspace.hpp"
#include "lorcomp/model2d.hpp"

namespace lorcomp {

// Time separations of a quadruple x1 << x2 << x3 (<= or <<) x4.
struct QuadrupleTaus {
  double t12 = 0.0, t13 = 0.0, t14 = 0.0, t23 = 0.0, t24 = 0.0, t34 = 0.0;
};

enum class Side { Upper, Lower };

// Gluing-side conventions; the defaults follow the comparison pictures.
// Overrides exist only to falsify the conventions experimentally.
struct GlueConfig {
  bool upperOpposite = true;
  bool lower1Opposite = true;
  bool lower2Same = true;
};

struct Verdict {
  std::vector<double> margins;
  bool pass = false;
  bool skipped = false;
  std::string skipReason;
};

// Upper bound: glue the model triangles over (x1,x2,x3) and (x1,x2,x4) along
// x1x2 on opposite sides, compare t34 against the model separation of x3~
// and x4~ (margin t34 - tau~).
Verdict four_point_upper_margin(const CurvatureParam& param, const QuadrupleTaus& q,
                                double tol, const GlueConfig& cfg = {});
// Lower bound: configuration 1 glues (x1,x2,x4) and (x1,x3,x4) along x1x4 on
// opposite sides (margin t23 - tau~); configuration 2 glues (x1,x2,x3) and
// (x2,x3,x4) along x2x3 on the same side (margin tau~ - t14).
Verdict four_point_lower_margins(const CurvatureParam& param, const QuadrupleTaus& q,
                                 double tol, const GlueConfig& cfg = {});

struct ScanWitness {
  std::array<int, 4> idx{};
  int marginIndex = 0;
  double margin = 0.0;
};

struct ScanReport {
  std::string check;
  double K = 0.0;
  Side side = Side::Upper;
  double tol = 0.0;
  long enumerated = 0;
  long tested = 0;
  long skipped = 0;
  long violations = 0;
  std::map<std::string, long> skipReasons;
  std::vector<ScanWitness> worst;  // sorted by margin, then indices; capped
  double worstMargin = kInf;
  double runtimeSeconds = 0.0;
  bool pass() const { return violations == 0; }
};

// Thread count: min(LORCOMP_THREADS if set, hardware concurrency); >= 1.
int scan_thread_count();

ScanReport scan_four_point(const FiniteLorentzSpace& space, const CurvatureParam& param,
                           Side side, double tol, int witnessCap = 20);

// Indices m with |tau(i,m) - mu*tau(i,j)| < eps and |tau(m,j) - (1-mu)*tau(i,j)| < eps.
std::vector<int> find_eps_mu_midpoints(const FiniteLorentzSpace& space, int i, int j,
                                       double mu, double eps);

struct EpsMuReport {
  std::vector<double> eps;  // descending schedule
  std::vector<double> mu;
  std::vector<double> g;          // worst one-sided deviation per eps level
  std::vector<long> midpoints;    // midpoints evaluated per eps level
  long triangles = 0;
  long skipped = 0;
  double tol = 0.0;
  bool pass = false;
};

EpsMuReport eps_mu_condition_scan(const FiniteLorentzSpace& space, const CurvatureParam& param,
                                  Side side, std::vector<double> epsList,
                                  std::vector<double> muList, double tol);

struct TriangleCheckReport {
  double worstDeviation = 0.0;
  std::array<double, 3> perRealizer{};  // worst deviation per sampled side
  long samples = 0;
  bool pass = false;
  bool skipped = false;
  std::string skipReason;
};

// One-sided triangle comparison for an ambient timelike triangle x << y << z:
// sample each realizer, place the matching comparison point, compare the
// separation from the opposite vertex.
TriangleCheckReport triangle_condition_check(const AmbientSpec& spec,
                                             const std::array<Vec3, 3>& verts,
                                             const CurvatureParam& param, Side side,
                                             int samplesPerSide, double tol);

}  // namespace lorcomp

#endif  // LORCOMP_CURVCHECK_HPP_
