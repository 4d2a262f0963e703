#include "torusct/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "torusct/errors.hpp"
#include "torusct/rng.hpp"

namespace torusct {

namespace {

inline double frac(double x) { return x - std::floor(x); }

}  // namespace

double xray_pixel(const PixelPhantom& p, Point x, IntDirection v) {
  if (v.v1 == 0 && v.v2 == 0) throw std::invalid_argument("xray_pixel: zero direction");
  if (p.n < 1) throw std::invalid_argument("xray_pixel: empty grid");
  const int n = p.n;
  const double* grid = p.values.data();

  // Work in cell units: position X in [0,n), velocity VX cells per unit t.
  double X = frac(x.x) * n, Y = frac(x.y) * n;
  const double VX = double(v.v1) * n, VY = double(v.v2) * n;

  int cx = std::min(int(X), n - 1), cy = std::min(int(Y), n - 1);
  double tX, tY, dtX = 0, dtY = 0;
  int sx = 0, sy = 0;
  if (VX > 0) {
    tX = (std::floor(X) + 1.0 - X) / VX;
    dtX = 1.0 / VX;
    sx = 1;
  } else if (VX < 0) {
    // Starting exactly on a cell line while moving left means the occupied
    // cell for t > 0 is the one below the line.
    if (X == std::floor(X)) cx = (cx == 0) ? n - 1 : cx - 1;
    tX = (std::ceil(X) - 1.0 - X) / VX;
    dtX = -1.0 / VX;
    sx = -1;
  } else {
    tX = std::numeric_limits<double>::infinity();
  }
  if (VY > 0) {
    tY = (std::floor(Y) + 1.0 - Y) / VY;
    dtY = 1.0 / VY;
    sy = 1;
  } else if (VY < 0) {
    if (Y == std::floor(Y)) cy = (cy == 0) ? n - 1 : cy - 1;
    tY = (std::ceil(Y) - 1.0 - Y) / VY;
    dtY = -1.0 / VY;
    sy = -1;
  } else {
    tY = std::numeric_limits<double>::infinity();
  }

  double t = 0.0, acc = 0.0;
  while (true) {
    double tn = std::min(std::min(tX, tY), 1.0);
    acc += grid[std::size_t(cy) * n + cx] * (tn - t);
    t = tn;
    if (t >= 1.0) break;
    if (tX <= tn) {
      cx += sx;
      if (cx == n) cx = 0;
      else if (cx < 0) cx = n - 1;
      tX += dtX;
    }
    if (tY <= tn) {
      cy += sy;
      if (cy == n) cy = 0;
      else if (cy < 0) cy = n - 1;
      tY += dtY;
    }
  }
  return acc;
}

namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1,1] (positive half).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, integral, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel gk15(const F& f, double a, double b) {
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  double resg = 0.0, resk = 0.0;
  for (int i = 0; i < 7; ++i) {
    double fv1 = f(c - h * kXgk[i]);
    double fv2 = f(c + h * kXgk[i]);
    resk += kWgk[i] * (fv1 + fv2);
    if (i % 2 == 1) resg += kWg[i / 2] * (fv1 + fv2);
  }
  double fc = f(c);
  resk += kWgk[7] * fc;
  resg += kWg[3] * fc;
  return {a, b, resk * h, std::abs(resk - resg) * h};
}

}  // namespace

double xray_quadrature(const AnalyticPhantom& p, Point x, IntDirection v,
                       const QuadratureOptions& opt) {
  if (!p.value) throw std::invalid_argument("xray_quadrature: phantom has no evaluator");
  if (!(opt.tol > 0)) throw std::invalid_argument("xray_quadrature: tol must be positive");

  // Piecewise-smooth panel boundaries: unit-cell crossings, then crossings of
  // the phantom's discontinuity lines inside each cell-to-cell stretch.
  std::vector<double> cuts = geodesic_break_ts(x, v);
  if (!p.x_breaks.empty() || !p.y_breaks.empty()) {
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    // Path derivative in the phantom's unrotated frame.
    const double dqx = ct * v.v1 + st * v.v2;
    const double dqy = -st * v.v1 + ct * v.v2;
    std::vector<double> extra;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double ta = cuts[i], tb = cuts[i + 1];
      const double um = 0.5 * (ta + tb);
      const double ox = std::floor(x.x + um * v.v1), oy = std::floor(x.y + um * v.v2);
      const double wx = x.x + ta * v.v1 - ox - 0.5, wy = x.y + ta * v.v2 - oy - 0.5;
      const double qx = 0.5 + ct * wx + st * wy;
      const double qy = 0.5 - st * wx + ct * wy;
      if (dqx != 0.0)
        for (double xb : p.x_breaks) {
          double tc = ta + (xb - qx) / dqx;
          if (tc > ta + 1e-13 && tc < tb - 1e-13) extra.push_back(tc);
        }
      if (dqy != 0.0)
        for (double yb : p.y_breaks) {
          double tc = ta + (yb - qy) / dqy;
          if (tc > ta + 1e-13 && tc < tb - 1e-13) extra.push_back(tc);
        }
    }
    cuts.insert(cuts.end(), extra.begin(), extra.end());
    std::sort(cuts.begin(), cuts.end());
  }

  auto f = [&](double t) { return p.value(frac(x.x + t * v.v1), frac(x.y + t * v.v2)); };

  std::priority_queue<Panel> q;
  double total = 0.0, total_err = 0.0;
  int panels = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 1e-13) continue;
    Panel pl = gk15(f, cuts[i], cuts[i + 1]);
    total += pl.integral;
    total_err += pl.err;
    q.push(pl);
    ++panels;
  }
  while (total_err > opt.tol && !q.empty()) {
    if (panels >= opt.max_panels)
      throw QuadratureError("xray_quadrature: panel budget exhausted", total_err);
    Panel top = q.top();
    q.pop();
    double m = 0.5 * (top.a + top.b);
    Panel l = gk15(f, top.a, m), r = gk15(f, m, top.b);
    total += l.integral + r.integral - top.integral;
    total_err += l.err + r.err - top.err;
    q.push(l);
    q.push(r);
    ++panels;
  }
  return total;
}

const Projection* EuclideanSinogram::find_angle(double angle_rad, double tol) const {
  for (const auto& pr : projections)
    if (std::abs(pr.angle_rad - angle_rad) <= tol) return &pr;
  return nullptr;
}

double direction_angle(IntDirection v) {
  if (v.v1 == 0 && v.v2 == 0) throw std::invalid_argument("direction_angle: zero direction");
  return std::atan2(double(-v.v1), double(v.v2));
}

namespace {

// Euclidean line integral of the zero-extended grid along P(s) = o + s u,
// s in [s0, s1], with the segment already clipped to the unit square.
double chord_integral(const PixelPhantom& p, Point o, double ux, double uy, double s0, double s1) {
  if (s1 - s0 <= 1e-14) return 0.0;
  const int n = p.n;
  const double* grid = p.values.data();
  double X = (o.x + s0 * ux) * n, Y = (o.y + s0 * uy) * n;
  X = std::clamp(X, 0.0, double(n));
  Y = std::clamp(Y, 0.0, double(n));
  const double VX = ux * n, VY = uy * n;
  int cx = std::min(int(X), n - 1), cy = std::min(int(Y), n - 1);
  double tX, tY, dtX = 0, dtY = 0;
  int sx = 0, sy = 0;
  const double span = s1 - s0;
  if (VX > 0) {
    tX = (std::floor(X) + 1.0 - X) / VX;
    dtX = 1.0 / VX;
    sx = 1;
  } else if (VX < 0) {
    // Starting exactly on an interior cell line while moving left: the
    // occupied cell is the one below the line.
    if (X == std::floor(X) && X > 0.0 && X < n) cx = int(X) - 1;
    tX = (std::ceil(X) - 1.0 - X) / VX;
    dtX = -1.0 / VX;
    sx = -1;
  } else {
    tX = std::numeric_limits<double>::infinity();
  }
  if (VY > 0) {
    tY = (std::floor(Y) + 1.0 - Y) / VY;
    dtY = 1.0 / VY;
    sy = 1;
  } else if (VY < 0) {
    if (Y == std::floor(Y) && Y > 0.0 && Y < n) cy = int(Y) - 1;
    tY = (std::ceil(Y) - 1.0 - Y) / VY;
    dtY = -1.0 / VY;
    sy = -1;
  } else {
    tY = std::numeric_limits<double>::infinity();
  }
  double t = 0.0, acc = 0.0;
  while (true) {
    double tn = std::min(std::min(tX, tY), span);
    acc += grid[std::size_t(cy) * n + cx] * (tn - t);
    t = tn;
    if (t >= span) break;
    if (tX <= tn) {
      cx += sx;
      if (cx < 0 || cx >= n) break;
      tX += dtX;
    }
    if (tY <= tn) {
      cy += sy;
      if (cy < 0 || cy >= n) break;
      tY += dtY;
    }
  }
  return acc;  // |u| = 1, so parameter length is arc length
}

}  // namespace

EuclideanSinogram radon_simulate(const PixelPhantom& p, const std::vector<double>& angles_rad,
                                 int M) {
  if (M < 2) throw std::invalid_argument("radon_simulate: M must be >= 2");
  if (p.n < 1) throw std::invalid_argument("radon_simulate: empty grid");
  const double half = std::sqrt(0.5);
  EuclideanSinogram out;
  out.projections.reserve(angles_rad.size());
  for (double ang : angles_rad) {
    Projection pr;
    pr.angle_rad = ang;
    const double ux = -std::sin(ang), uy = std::cos(ang);
    const double nx = -uy, ny = ux;  // offset axis; cross(u, c*n') = c
    pr.offsets.resize(M);
    pr.values.resize(M);
    for (int j = 0; j < M; ++j) {
      double c = -half + 2.0 * half * j / (M - 1);
      pr.offsets[j] = c;
      Point o{0.5 + c * nx, 0.5 + c * ny};
      // Clip o + s u to [0,1]^2.
      double lo = -2.0, hi = 2.0;
      bool empty = false;
      for (int axis = 0; axis < 2; ++axis) {
        double oc = axis ? o.y : o.x, uc = axis ? uy : ux;
        if (uc == 0.0) {
          if (oc < 0.0 || oc > 1.0) empty = true;
        } else {
          double s0 = (0.0 - oc) / uc, s1 = (1.0 - oc) / uc;
          lo = std::max(lo, std::min(s0, s1));
          hi = std::min(hi, std::max(s0, s1));
        }
      }
      pr.values[j] = (empty || hi <= lo) ? 0.0 : chord_integral(p, o, ux, uy, lo, hi);
    }
    out.projections.push_back(std::move(pr));
  }
  return out;
}

double torus_project(const EuclideanSinogram& s, Point x, IntDirection v) {
  if (v.v1 == 0 && v.v2 == 0) throw std::invalid_argument("torus_project: zero direction");
  const double ang = direction_angle(v);
  const Projection* pr = s.find_angle(ang);
  if (!pr)
    throw MissingAngleError("torus_project: sinogram has no projection at the direction angle");
  if (pr->offsets.size() < 2)
    throw std::invalid_argument("torus_project: projection needs at least two rays");
  const double ux = -std::sin(ang), uy = std::cos(ang);
  const double step = pr->offsets[1] - pr->offsets[0];
  const int M = static_cast<int>(pr->offsets.size());
  double sum = 0.0;
  for (const Segment& seg : geodesic_segments(x, v)) {
    double mx = 0.5 * (seg.start.x + seg.end.x) - 0.5;
    double my = 0.5 * (seg.start.y + seg.end.y) - 0.5;
    double d = ux * my - uy * mx;  // signed offset of the chord's line
    double pos = (d - pr->offsets[0]) / step;
    if (pos < -1e-9 || pos > M - 1 + 1e-9) continue;  // outside the sampled band
    int j = std::clamp(int(std::floor(pos)), 0, M - 2);
    double w = pos - j;
    sum += (1.0 - w) * pr->values[j] + w * pr->values[j + 1];
  }
  return sum / norm(v);
}

const Profile* GeodesicSamples::find(ReducedDirection v) const {
  for (const auto& pr : profiles)
    if (pr.v == v) return &pr;
  return nullptr;
}

GeodesicSamples acquire(const RaySampler& sample, const DirectionSet& dirs, int n_d, Rule rule) {
  if (n_d < 1) throw std::invalid_argument("acquire: n_d must be >= 1");
  GeodesicSamples out;
  out.profiles.reserve(dirs.members.size());
  const ReducedDirection xaxis{1, 0};
  for (ReducedDirection v : dirs.members) {
    Profile pf;
    pf.v = v;
    pf.axis = (v == xaxis) ? Axis::Y : Axis::X;
    pf.rule = rule;
    pf.n_d = n_d;
    pf.values.resize(n_d);
    const double shift = (rule == Rule::Mid) ? 0.5 : 0.0;
    for (int l = 0; l < n_d; ++l) {
      double pos = (l + shift) / n_d;
      Point start = (pf.axis == Axis::X) ? Point{pos, 0.0} : Point{0.0, pos};
      pf.values[l] = sample(start, as_int(v));
    }
    out.profiles.push_back(std::move(pf));
  }
  return out;
}

GeodesicSamples acquire(const PixelPhantom& p, const DirectionSet& dirs, int n_d, Rule rule) {
  return acquire([&p](Point x, IntDirection v) { return xray_pixel(p, x, v); }, dirs, n_d, rule);
}

GeodesicSamples acquire(const AnalyticPhantom& p, const DirectionSet& dirs, int n_d, Rule rule,
                        const QuadratureOptions& opt) {
  return acquire([&](Point x, IntDirection v) { return xray_quadrature(p, x, v, opt); }, dirs,
                 n_d, rule);
}

GeodesicSamples acquire(const EuclideanSinogram& s, const DirectionSet& dirs, int n_d, Rule rule) {
  return acquire([&s](Point x, IntDirection v) { return torus_project(s, x, v); }, dirs, n_d,
                 rule);
}

GeodesicSamples add_noise(const GeodesicSamples& d, const NoiseSpec& spec) {
  GeodesicSamples out = d;
  if (spec.sigma == 0.0) return out;
  if (spec.sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
  for (std::size_t di = 0; di < out.profiles.size(); ++di) {
    auto& vals = out.profiles[di].values;
    for (std::size_t l = 0; l < vals.size(); ++l) {
      SplitMix64 g = stream_for(spec.seed, di, l);
      vals[l] += spec.sigma * g.gaussian();
    }
  }
  return out;
}

}  // namespace torusct
