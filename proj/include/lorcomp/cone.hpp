#ifndef LORCOMP_CONE_HPP_
#define LORCOMP_CONE_HPP_

#include <utility>
#include <vector>

#include "lorcomp/common.hpp"
#include "lorcomp/lorspace.hpp"
#include "lorcomp/model2d.hpp"

namespace lorcomp {

struct FiniteMetricSpace {
  int n = 0;
  std::vector<double> dY;  // n*n row-major, symmetric, zero diagonal

  double at(int i, int j) const { return dY[static_cast<std::size_t>(i) * n + j]; }
  void set(int i, int j, double v) { dY[static_cast<std::size_t>(i) * n + j] = v; }
  static FiniteMetricSpace zeros(int n);
  // Throws StructuralError if shape/symmetry/diagonal/triangle inequality fail.
  void validate(double tol) const;
};

// (0, anything) is the apex; all apex representatives compare equal.
struct ConePoint {
  double r = 0.0;
  int baseIndex = 0;
};

struct ConeTau {
  double tau = 0.0;
  bool causal = false;
  bool timelike = false;
};

struct TransferQuantities {
  double mu = 0.0;
  double r_m = 0.0;
  double epsCoefficient = 0.0;
};

// Standard cone metric: sqrt(r1^2 + r2^2 - 2 r1 r2 cos(min{pi, dY})).
double cone_metric(double r1, double r2, double dY);
// tau = sqrt(r1^2 + r2^2 - 2 r1 r2 cosh dY) when the radical is nonnegative
// and r1 <= r2; tiny negative radicals (|.| <= 1e-12) clamp to zero.
ConeTau cone_tau(double r1, double r2, double dY);

FiniteLorentzSpace build_cone_space(const FiniteMetricSpace& base,
                                    const std::vector<double>& radii, bool includeApex);
FiniteLorentzSpace build_cone_space_points(const FiniteMetricSpace& base,
                                           const std::vector<ConePoint>& pts,
                                           bool includeApex);

// mu-midpoint transfer data for the timelike cone pair x2=(r2,y2), x3=(r3,y3).
TransferQuantities transfer_quantities(double r2, double r3, double d23);

struct BaseCheckReport {
  std::vector<double> eps;
  std::vector<double> worstExcess;           // per eps level
  std::vector<std::array<int, 4>> witness;   // (y1, y2, y3, midpoint) per eps level
  std::vector<long> midpointsTested;         // per eps level
  long triangles = 0;
  bool pass = false;
};

// For every base triangle and every eps-midpoint of one side present in the
// sample, compare d(y1, m) against the H^2 comparison triangle's exact
// midpoint distance; pass iff the worst excess at the smallest eps is <= tol.
BaseCheckReport base_curvature_minus1_check(const FiniteMetricSpace& base,
                                            const std::vector<double>& epsList, double tol);

// Oracle for 1-D hyperbolic bases: (r, y) -> (r cosh y, r sinh y) in R^{1,1}.
std::pair<double, double> polar_map(double r, double y);

// --- base sample generators for the test corpus ---

struct H2Base {
  FiniteMetricSpace metric;
  std::vector<HPoint> points;
};
// Random sample of a hyperbolic disc of the given radius; withMidpoints adds
// the exact geodesic midpoint of every pair of original points.
H2Base h2_disc_base(int n, double radius, std::uint64_t seed, bool withMidpoints);

struct E2Base {
  FiniteMetricSpace metric;
  std::vector<std::array<double, 2>> points;
};
E2Base euclidean_disc_base(int n, double radius, std::uint64_t seed, bool withMidpoints);

struct H1Base {
  FiniteMetricSpace metric;
  std::vector<double> positions;
};
// n points on the real line in [-halfLength, halfLength].
H1Base h1_line_base(int n, double halfLength, std::uint64_t seed);

FiniteMetricSpace single_point_base();
// Random weighted tree metric on n nodes.
FiniteMetricSpace tree_base(int n, std::uint64_t seed);

void save_base(const FiniteMetricSpace& base, const std::string& path);
FiniteMetricSpace load_base(const std::string& path);

}  // namespace lorcomp

#endif  // LORCOMP_CONE_HPP_
