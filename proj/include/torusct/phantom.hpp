#pragma once

#include <functional>
#include <string>
#include <vector>

#include "torusct/types.hpp"

namespace torusct {

// Square cell grid on [0,1]^2. Cell (i,j) covers [j/n,(j+1)/n) x [i/n,(i+1)/n),
// rows counted from the bottom, stored row-major from the bottom row.
struct PixelPhantom {
  int n = 0;
  std::vector<double> values;
  double& at(int i, int j) { return values[std::size_t(i) * n + j]; }
  double at(int i, int j) const { return values[std::size_t(i) * n + j]; }
};

// Point-evaluable phantom on [0,1]^2; the forward models extend it 1-periodically.
// x_breaks/y_breaks list discontinuity lines in the frame rotated back by theta
// about (0.5, 0.5); quadrature splits panels there so each panel is smooth.
struct AnalyticPhantom {
  std::function<double(double, double)> value;
  std::string tag;
  double theta = 0.0;
  std::vector<double> x_breaks;
  std::vector<double> y_breaks;
  double operator()(double x, double y) const { return value(x, y); }
};

// Nordic-flag test pattern rotated by theta about (0.5, 0.5): background 0,
// cloth 0.9, cross stripes 0.3, all regions open.
double flag_value(double x, double y, double theta);
AnalyticPhantom flag_phantom(double theta = 0.0);

AnalyticPhantom constant_phantom(double c);

// Lattice-sum periodization of exp(-a |x - center|^2); smooth on the torus.
AnalyticPhantom gaussian_bump(double a = 50.0, Point center = {0.5, 0.5});

// Ten-ellipse high-contrast head phantom mapped onto [0,1]^2, cell-center sampled.
PixelPhantom shepp_logan(int n);

// Cell-center rasterization.
PixelPhantom rasterize(const AnalyticPhantom& p, int n);

// Resample rotated by theta about (0.5, 0.5): each output cell center reads the
// input at the back-rotated position via bilinear interpolation, 0 outside.
PixelPhantom rotate_grid(const PixelPhantom& p, double theta);

}  // namespace torusct
