#include "torusct/phantom.hpp"

#include <cmath>
#include <stdexcept>

namespace torusct {

namespace {

inline bool open_in(double v, double lo, double hi) { return v > lo && v < hi; }

double flag_unrotated(double x, double y) {
  if (!open_in(x, 0.14, 0.86) || !open_in(y, 0.28, 0.72)) return 0.0;
  // Cross stripes are darker than the surrounding cloth.
  if (open_in(x, 0.34, 0.46) || open_in(y, 0.44, 0.56)) return 0.3;
  return 0.9;
}

}  // namespace

double flag_value(double x, double y, double theta) {
  if (theta == 0.0) return flag_unrotated(x, y);
  double c = std::cos(theta), s = std::sin(theta);
  double dx = x - 0.5, dy = y - 0.5;
  return flag_unrotated(0.5 + c * dx + s * dy, 0.5 - s * dx + c * dy);
}

AnalyticPhantom flag_phantom(double theta) {
  AnalyticPhantom p;
  p.value = [theta](double x, double y) { return flag_value(x, y, theta); };
  p.tag = "flag";
  p.theta = theta;
  p.x_breaks = {0.14, 0.34, 0.46, 0.86};
  p.y_breaks = {0.28, 0.44, 0.56, 0.72};
  return p;
}

AnalyticPhantom constant_phantom(double c) {
  AnalyticPhantom p;
  p.value = [c](double, double) { return c; };
  p.tag = "constant";
  return p;
}

AnalyticPhantom gaussian_bump(double a, Point center) {
  if (!(a > 0.0)) throw std::invalid_argument("gaussian_bump: a must be positive");
  // Window radius keeps the dropped lattice tail below exp(-60).
  int R = 1 + static_cast<int>(std::ceil(std::sqrt(60.0 / a)));
  AnalyticPhantom p;
  p.value = [a, center, R](double x, double y) {
    double sum = 0.0;
    for (int mx = -R; mx <= R; ++mx)
      for (int my = -R; my <= R; ++my) {
        double dx = x - center.x - mx;
        double dy = y - center.y - my;
        sum += std::exp(-a * (dx * dx + dy * dy));
      }
    return sum;
  };
  p.tag = "gaussian";
  return p;
}

PixelPhantom shepp_logan(int n) {
  if (n < 1) throw std::invalid_argument("shepp_logan: n must be >= 1");
  // High-contrast ten-ellipse table: amplitude, semi-axes, center, angle (deg).
  static const double E[10][6] = {
      {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
      {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
      {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
      {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
      {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
      {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
      {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
      {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
      {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
      {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0}};
  PixelPhantom p;
  p.n = n;
  p.values.assign(std::size_t(n) * n, 0.0);
  const double deg = kTwoPi / 360.0;
  for (int i = 0; i < n; ++i) {
    double v = 2.0 * (i + 0.5) / n - 1.0;
    for (int j = 0; j < n; ++j) {
      double u = 2.0 * (j + 0.5) / n - 1.0;
      double val = 0.0;
      for (const auto& e : E) {
        double c = std::cos(e[5] * deg), s = std::sin(e[5] * deg);
        double du = u - e[3], dv = v - e[4];
        double xi = (du * c + dv * s) / e[1];
        double eta = (-du * s + dv * c) / e[2];
        if (xi * xi + eta * eta <= 1.0) val += e[0];
      }
      // Cancelling amplitudes (1 - 0.8 - 0.2) otherwise leave -1e-17 dust.
      p.at(i, j) = std::max(0.0, val);
    }
  }
  return p;
}

PixelPhantom rasterize(const AnalyticPhantom& p, int n) {
  if (n < 1) throw std::invalid_argument("rasterize: n must be >= 1");
  PixelPhantom out;
  out.n = n;
  out.values.resize(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = p((j + 0.5) / n, (i + 0.5) / n);
  return out;
}

PixelPhantom rotate_grid(const PixelPhantom& p, double theta) {
  if (theta == 0.0) return p;
  int n = p.n;
  PixelPhantom out;
  out.n = n;
  out.values.assign(std::size_t(n) * n, 0.0);
  double c = std::cos(theta), s = std::sin(theta);
  for (int i = 0; i < n; ++i) {
    double y = (i + 0.5) / n - 0.5;
    for (int j = 0; j < n; ++j) {
      double x = (j + 0.5) / n - 0.5;
      double xs = 0.5 + c * x + s * y;
      double ys = 0.5 - s * x + c * y;
      double gx = xs * n - 0.5;
      double gy = ys * n - 0.5;
      int j0 = static_cast<int>(std::floor(gx));
      int i0 = static_cast<int>(std::floor(gy));
      double fx = gx - j0, fy = gy - i0;
      auto sample = [&](int ii, int jj) -> double {
        if (ii < 0 || jj < 0 || ii >= n || jj >= n) return 0.0;
        return p.at(ii, jj);
      };
      out.at(i, j) = (1 - fy) * ((1 - fx) * sample(i0, j0) + fx * sample(i0, j0 + 1)) +
                     fy * ((1 - fx) * sample(i0 + 1, j0) + fx * sample(i0 + 1, j0 + 1));
    }
  }
  return out;
}

}  // namespace torusct
