#include "torusct/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace torusct {

namespace {
constexpr double kTol = 1e-12;  // break-point dedup tolerance on t
}

ReducedDirection reduce(IntDirection v) {
  if (v.v1 == 0 && v.v2 == 0) throw std::invalid_argument("reduce: zero direction");
  int g = std::gcd(std::abs(v.v1), std::abs(v.v2));
  int a = v.v1 / g;
  int b = v.v2 / g;
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
  }
  return {a, b};
}

int height(ReducedDirection d) { return std::max(std::abs(d.a), std::abs(d.b)); }

ReducedDirection perp_direction(FourierIndex k) {
  if (k.k1 == 0 && k.k2 == 0) throw std::invalid_argument("perp_direction: zero index");
  return reduce({-k.k2, k.k1});
}

bool DirectionSet::contains(ReducedDirection d) const { return index_of(d) >= 0; }

int DirectionSet::index_of(ReducedDirection d) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i] == d) return static_cast<int>(i);
  return -1;
}

DirectionSet direction_set(int N) {
  if (N < 1) throw std::invalid_argument("direction_set: N must be >= 1");
  DirectionSet s;
  s.box_radius = N;
  s.members.push_back({1, 0});
  s.members.push_back({0, 1});
  std::vector<ReducedDirection> upper;
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      if (std::gcd(a, b) == 1) upper.push_back({a, b});
  for (auto d : upper) s.members.push_back(d);
  for (auto d : upper) s.members.push_back({d.a, -d.b});
  return s;
}

long phi_bruteforce(int N) {
  if (N < 1) throw std::invalid_argument("phi_bruteforce: N must be >= 1");
  // Each projective class of height <= N has exactly two primitive vectors
  // (v and -v) in the box, so count primitive vectors and halve.
  long primitive = 0;
  for (int i = -N; i <= N; ++i)
    for (int j = -N; j <= N; ++j) {
      if (i == 0 && j == 0) continue;
      if (std::gcd(std::abs(i), std::abs(j)) == 1) ++primitive;
    }
  return primitive / 2;
}

namespace {

// Boundary touches of x + t v for t in [0,1], clamped and deduplicated.
// 0 and 1 appear exactly when x lies on a boundary line swept by v.
std::vector<double> raw_breaks(Point x, IntDirection v) {
  if (v.v1 == 0 && v.v2 == 0) throw std::invalid_argument("geodesic: zero direction");
  std::vector<double> ts;
  const double x0[2] = {x.x, x.y};
  const int vv[2] = {v.v1, v.v2};
  for (int axis = 0; axis < 2; ++axis) {
    if (vv[axis] == 0) continue;
    double lo = std::min(x0[axis], x0[axis] + vv[axis]);
    double hi = std::max(x0[axis], x0[axis] + vv[axis]);
    long mlo = static_cast<long>(std::ceil(lo - kTol));
    long mhi = static_cast<long>(std::floor(hi + kTol));
    for (long m = mlo; m <= mhi; ++m) {
      double t = (double(m) - x0[axis]) / vv[axis];
      if (t < -kTol || t > 1.0 + kTol) continue;
      ts.push_back(std::clamp(t, 0.0, 1.0));
    }
  }
  std::sort(ts.begin(), ts.end());
  std::vector<double> out;
  for (double t : ts)
    if (out.empty() || t - out.back() > kTol) out.push_back(t);
  return out;
}

}  // namespace

std::vector<double> geodesic_break_ts(Point x, IntDirection v) {
  std::vector<double> ts = raw_breaks(x, v);
  if (ts.empty() || ts.front() > kTol) ts.insert(ts.begin(), 0.0);
  if (ts.back() < 1.0 - kTol) ts.push_back(1.0);
  ts.front() = 0.0;
  ts.back() = 1.0;
  return ts;
}

namespace {

Segment make_chord(Point x, IntDirection v, double u0, double u1) {
  double um = 0.5 * (u0 + u1);
  double ox = std::floor(x.x + um * v.v1);
  double oy = std::floor(x.y + um * v.v2);
  Segment s;
  s.start = {std::clamp(x.x + u0 * v.v1 - ox, 0.0, 1.0),
             std::clamp(x.y + u0 * v.v2 - oy, 0.0, 1.0)};
  s.end = {std::clamp(x.x + u1 * v.v1 - ox, 0.0, 1.0),
           std::clamp(x.y + u1 * v.v2 - oy, 0.0, 1.0)};
  s.length = (u1 - u0) * norm(v);
  return s;
}

}  // namespace

std::vector<Segment> geodesic_segments(Point x, IntDirection v) {
  std::vector<double> ts = raw_breaks(x, v);
  std::vector<Segment> segs;
  if (!ts.empty() && ts.front() <= kTol) {
    // x sits on a boundary: 0 and 1 are both touches, chords are consecutive pairs.
    ts.front() = 0.0;
    ts.back() = 1.0;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) segs.push_back(make_chord(x, v, ts[i], ts[i + 1]));
  } else {
    // Interior start: chords between interior touches, then the single chord
    // through x, merged across the t = 1 wrap, appended last.
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) segs.push_back(make_chord(x, v, ts[i], ts[i + 1]));
    segs.push_back(make_chord(x, v, ts.back() - 1.0, ts.front()));
  }
  return segs;
}

}  // namespace torusct
