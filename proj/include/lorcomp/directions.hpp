#ifndef LORCOMP_DIRECTIONS_HPP_
#define LORCOMP_DIRECTIONS_HPP_

#include <array>
#include <utility>
#include <vector>

#include "lorcomp/common.hpp"
#include "lorcomp/curvcheck.hpp"
#include "lorcomp/lorspace.hpp"

namespace lorcomp {

// A future timelike direction at a base point of an analytic ambient,
// stored as the ambient unit tangent (g(u,u) = +1).
struct DirectionSample {
  AmbientSpec ambient;
  Vec3 p{0.0, 0.0, 0.0};
  Vec3 u{1.0, 0.0, 0.0};
};

// Throws unless u is a unit future timelike tangent at p.
void check_direction(const DirectionSample& d);

// Canonical base point of each ambient (model origin).
Vec3 ambient_origin(const AmbientSpec& spec);
// Direction at the canonical origin with rapidity chi in the canonical
// (time, space) frame; phi rotates into the second spatial axis (minkowski-3).
DirectionSample boost_direction(const AmbientSpec& spec, double chi, double phi = 0.0);

// Exact smooth angle arccosh(g(u1, u2)) — the oracle the estimator converges to.
double smooth_angle(const DirectionSample& d1, const DirectionSample& d2);

struct GridSpec {
  double t0 = 1.0;
  int kmin = 3;
  int kmax = 14;  // schedule t = t0 * 2^-k, k = kmin..kmax
  int count() const { return kmax - kmin + 1; }
  double at(int i) const;  // i = 0 is the coarsest scale
};

struct AngleGrid {
  std::vector<double> grid;   // the t (= s) schedule, coarse to fine
  std::vector<double> theta;  // row-major theta(t_i, s_j); NaN where absent
  double estimate = 0.0;      // sup over the finest tail block
  double richardson = 0.0;    // extrapolation diagnostic
  bool warning = false;       // estimate and extrapolation disagree badly
  double at(int i, int j) const { return theta[static_cast<std::size_t>(i) * grid.size() + j]; }
};

// theta(t,s) = comparison angle at p of the triangle (p, gamma1(t), gamma2(s)),
// computed with curvature-K comparisons (default flat).
AngleGrid angle_estimate(const DirectionSample& d1, const DirectionSample& d2,
                         const GridSpec& grid = {}, double K = 0.0);

struct MonotonicityVerdict {
  double worstDefect = 0.0;
  long comparisons = 0;
  bool pass = false;
};

// Upper bound: signed theta (= -unsigned for two future curves) nonincreasing
// in t and s, i.e. unsigned theta nondecreasing; lower bound reversed.
MonotonicityVerdict theta_monotonicity(const DirectionSample& d1, const DirectionSample& d2,
                                       const GridSpec& grid, Side side, double tol = 1e-6);

struct MidpointResult {
  DirectionSample m;
  double angle1 = 0.0;  // estimated angle d1 -- m
  double angle2 = 0.0;  // estimated angle m -- d2
};

// Constructive direction eps-midpoint: equalize the two comparison angles by
// bisecting along the realizer between curve points.
MidpointResult direction_midpoint(const DirectionSample& d1, const DirectionSample& d2,
                                  double eps);

// Future logarithm: requires p << x.
std::pair<double, DirectionSample> log_map(const AmbientSpec& spec, const Vec3& p, const Vec3& x);
// tau-arclength exponential; r >= 0.
Vec3 exp_map(const DirectionSample& d, double r);

// Whether exp(mu * t, d1) << exp(t, d2) in the ambient.
bool chronology_threshold(const DirectionSample& d1, const DirectionSample& d2, double mu,
                          double t);
// The mu where the chronology relation flips, bisected to 1e-12.
double threshold_flip(const DirectionSample& d1, const DirectionSample& d2, double t);

struct BlowupTable {
  std::vector<double> lambdas;
  std::vector<std::array<int, 2>> pairs;       // (i, j), i < j
  std::vector<std::vector<double>> values;     // values[l][pair] = tau/lambda
  std::vector<double> reference;               // cone tau-bar per pair
  std::vector<double> finestError;             // |value - reference| at last lambda
  bool coneChain = false;                      // items form a timelike cone 4-chain
  std::vector<double> chainMargins;            // flat four-point margins on tau-bar
};

// Blow-up at p of the points exp(lambda * r_i, d_i) against the Minkowski
// cone over the direction space.
BlowupTable blowup_table(const Vec3& p, const std::vector<std::pair<double, DirectionSample>>& items,
                         const std::vector<double>& lambdas);

}  // namespace lorcomp

#endif  // LORCOMP_DIRECTIONS_HPP_
