#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "torusct/lattice.hpp"
#include "torusct/phantom.hpp"

namespace torusct {

// Mean of the pixel grid along the wrapped geodesic, t in [0,1]: exact
// cell-crossing accumulation, so piecewise-constant rays integrate exactly.
double xray_pixel(const PixelPhantom& p, Point x, IntDirection v);

struct QuadratureOptions {
  double tol = 1e-9;      // absolute tolerance on the parameter integral
  int max_panels = 200000;
};

// Gauss-Kronrod 7-15 globally adaptive quadrature of the parameter integral,
// pre-split at unit-cell crossings and phantom discontinuity crossings so the
// starting panels are smooth. Throws QuadratureError on budget exhaustion.
double xray_quadrature(const AnalyticPhantom& p, Point x, IntDirection v,
                       const QuadratureOptions& opt = {});

struct Projection {
  double angle_rad = 0.0;       // ray direction angle from the y-axis, counterclockwise
  std::vector<double> offsets;  // equispaced, strictly increasing
  std::vector<double> values;   // Euclidean chord integrals of the grid
};

struct EuclideanSinogram {
  std::vector<Projection> projections;
  const Projection* find_angle(double angle_rad, double tol = 1e-9) const;
};

// Angle of v measured from the y-axis, counterclockwise.
double direction_angle(IntDirection v);

// Parallel-beam sinogram of the zero-extended pixel grid: for each angle, M rays
// with offsets spanning [-sqrt(2)/2, sqrt(2)/2] about the square's center.
EuclideanSinogram radon_simulate(const PixelPhantom& p, const std::vector<double>& angles_rad,
                                 int M);

// Torus X-ray value assembled from parallel-beam data: each unit-square chord of
// the geodesic reads the matching projection at its signed offset, linearly
// interpolated between the two nearest rays; the chord sum is divided by |v|.
double torus_project(const EuclideanSinogram& s, Point x, IntDirection v);

struct Profile {
  ReducedDirection v;
  Axis axis = Axis::X;  // (1,0) is sampled along the y-axis, every other direction along x
  Rule rule = Rule::Left;
  int n_d = 0;
  std::vector<double> values;
};

struct GeodesicSamples {
  std::vector<Profile> profiles;  // canonical direction order
  const Profile* find(ReducedDirection v) const;
};

using RaySampler = std::function<double(Point, IntDirection)>;

// Sample geodesic start points l/n_d (left) or (l+1/2)/n_d (mid) on the profile
// axis for every direction in dirs.
GeodesicSamples acquire(const RaySampler& sample, const DirectionSet& dirs, int n_d, Rule rule);
GeodesicSamples acquire(const PixelPhantom& p, const DirectionSet& dirs, int n_d, Rule rule);
GeodesicSamples acquire(const AnalyticPhantom& p, const DirectionSet& dirs, int n_d, Rule rule,
                        const QuadratureOptions& opt = {});
GeodesicSamples acquire(const EuclideanSinogram& s, const DirectionSet& dirs, int n_d, Rule rule);

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

// Adds i.i.d. N(0, sigma^2) to every sample. The draw for sample l of profile d
// depends only on (seed, d, l), never on evaluation order or thread count.
GeodesicSamples add_noise(const GeodesicSamples& d, const NoiseSpec& spec);

}  // namespace torusct
