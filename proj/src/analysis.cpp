#include "torusct/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "torusct/errors.hpp"
#include "torusct/rng.hpp"

namespace torusct {

double sobolev_norm_table(const FourierTable& t, double s) {
  double sum = 0.0;
  for (const auto& e : t.entries) sum += std::pow(1.0 + double(norm2(e.k)), s) * std::norm(e.c);
  return std::sqrt(sum);
}

double sobolev_norm_data(const DataTable& d, double s) {
  double sum = d.mean ? std::norm(*d.mean) : 0.0;
  for (const auto& e : d.entries) sum += std::pow(1.0 + double(norm2(e.k)), s) * std::norm(e.c);
  return std::sqrt(sum);
}

double tikhonov_objective(const FourierTable& f, const DataTable& g, double alpha, double r,
                          double s) {
  if (alpha < 0) throw std::invalid_argument("tikhonov_objective: alpha must be >= 0");
  double mismatch = std::norm(f.at({0, 0}) - (g.mean ? *g.mean : Complex{0.0, 0.0}));
  // Union support: walk the table ball, then data keys outside it.
  for (const auto& e : f.entries) {
    if (e.k.k1 == 0 && e.k.k2 == 0) continue;
    const DataTable::Entry* de = g.find(e.k);
    Complex gv = de ? de->c : Complex{0.0, 0.0};
    mismatch += std::pow(1.0 + double(norm2(e.k)), r) * std::norm(e.c - gv);
  }
  for (const auto& de : g.entries)
    if (!f.find(de.k)) mismatch += std::pow(1.0 + double(norm2(de.k)), r) * std::norm(de.c);
  double penalty = sobolev_norm_table(f, s);
  return mismatch + alpha * penalty * penalty;
}

double strategy_c(double x) {
  if (!(x > 0.0) || x > 1.0) throw std::invalid_argument("strategy_c: requires 0 < x <= 1");
  if (x == 1.0) return 1.0;
  return x * std::pow(1.0 / x - 1.0, 1.0 - x);
}

double strategy_bound(double alpha, double s, double delta, double eps, double f_norm) {
  if (!(delta > 0.0) || !(delta < 2.0 * s))
    throw std::invalid_argument("strategy_bound: requires 0 < delta < 2s");
  if (!(alpha > 0.0) || alpha > 2.0 * s / delta - 1.0)
    throw std::invalid_argument("strategy_bound: requires 0 < alpha <= 2s/delta - 1");
  if (eps < 0.0) throw std::invalid_argument("strategy_bound: eps must be >= 0");
  const double x = delta / (2.0 * s);
  double bound = std::pow(alpha, x) * strategy_c(x) * f_norm;
  if (eps > 0.0) bound += eps / alpha;
  return bound;
}

StrategyReport verify_strategy(int trials, double r, double s, double delta, double t, double eps,
                               std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_strategy: trials must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("verify_strategy: eps must be positive");
  const double ball = 20.0;
  const double alpha = std::sqrt(eps);
  StrategyReport rep;
  rep.trials = trials;
  rep.r = r;
  rep.s = s;
  rep.delta = delta;
  rep.t = t;
  rep.eps = eps;
  rep.alpha = alpha;
  rep.seed = seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();

  const DirectionSet dirs = direction_set(int(ball));
  std::vector<double> errors;
  errors.reserve(trials);
  for (int trial = 0; trial < trials; ++trial) {
    // Random truth with decaying spectrum, normalized to ||f||_{H^(r+delta)} = 1.
    FourierTable f = FourierTable::zeros(ball, true);
    {
      SplitMix64 g = stream_for(seed, std::uint64_t(trial), 0);
      for (auto& e : f.entries) {
        double scale = std::pow(1.0 + double(norm2(e.k)), -0.5 * (r + delta) - 0.55);
        e.c = Complex{g.gaussian(), g.gaussian()} * scale;
      }
      FourierTable raw = f;
      for (auto& e : f.entries)
        e.c = 0.5 * (raw.at(e.k) + std::conj(raw.at({-e.k.k1, -e.k.k2})));
      double nrm = sobolev_norm_table(f, r + delta);
      for (auto& e : f.entries) e.c /= nrm;
    }
    DataTable g = xray_table(f, dirs);
    {
      // Data noise of exact H^r size eps.
      DataTable noise = g;
      SplitMix64 gen = stream_for(seed, std::uint64_t(trial), 1);
      noise.mean = Complex{gen.gaussian(), 0.0};
      for (auto& e : noise.entries) e.c = Complex{gen.gaussian(), gen.gaussian()};
      double nrm = sobolev_norm_data(noise, r);
      *noise.mean *= eps / nrm;
      for (auto& e : noise.entries) e.c *= eps / nrm;
      if (g.mean) *g.mean += *noise.mean;
      for (std::size_t i = 0; i < g.entries.size(); ++i) g.entries[i].c += noise.entries[i].c;
    }
    FourierTable rec = tikhonov_filter(adjoint(g, ball), alpha, s - r);
    FourierTable diff = rec;
    for (auto& e : diff.entries) e.c -= f.at(e.k);
    double err = sobolev_norm_table(diff, t);
    double bound = strategy_bound(alpha, s, delta, eps, 1.0);
    if (err <= bound) ++rep.passes;
    rep.worst_margin = std::min(rep.worst_margin, bound - err);
    errors.push_back(err);
  }
  std::sort(errors.begin(), errors.end());
  rep.median_error = errors[errors.size() / 2];
  return rep;
}

double cutoff_error(const PixelPhantom& p, double r) {
  const int n = p.n;
  if (!(r <= n / 2.0 - 1.0)) throw std::invalid_argument("cutoff_error: requires r <= n/2 - 1");
  double meansq = 0.0;
  for (double v : p.values) meansq += v * v;
  meansq /= double(n) * double(n);
  std::vector<Complex> F = dft2_grid(p);
  const double rr = r * r;
  const int R = static_cast<int>(std::floor(r));
  double ball = 0.0;
  for (int k2 = -R; k2 <= R; ++k2)
    for (int k1 = -R; k1 <= R; ++k1) {
      FourierIndex k{k1, k2};
      if (double(norm2(k)) <= rr) ball += std::norm(dft2_at(F, n, k));
    }
  return std::max(0.0, meansq - ball);
}

std::vector<std::uint8_t> support_mask(const PixelPhantom& reference) {
  std::vector<std::uint8_t> m(reference.values.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = reference.values[i] > 0.0 ? 1 : 0;
  return m;
}

ErrorReport grid_error(const PixelPhantom& reference, const PixelPhantom& got, double p,
                       const std::vector<std::uint8_t>* mask) {
  if (reference.n != got.n)
    throw std::invalid_argument("grid_error: reference and evaluation grids differ");
  const bool inf = std::isinf(p);
  if (!inf && p != 1.0 && p != 2.0)
    throw std::invalid_argument("grid_error: p must be 1, 2, or infinity");
  if (mask && mask->size() != reference.values.size())
    throw std::invalid_argument("grid_error: mask size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < reference.values.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    double d = std::abs(got.values[i] - reference.values[i]);
    double rv = std::abs(reference.values[i]);
    if (inf) {
      num = std::max(num, d);
      den = std::max(den, rv);
    } else if (p == 1.0) {
      num += d;
      den += rv;
    } else {
      num += d * d;
      den += rv * rv;
    }
  }
  if (den == 0.0) throw DegenerateReferenceError("grid_error: reference norm is zero");
  ErrorReport rep;
  rep.metric = "recon_error";
  rep.p = p;
  rep.grid = reference.n;
  rep.masked = mask != nullptr;
  rep.value = (p == 2.0 && !inf) ? std::sqrt(num / den) : num / den;
  return rep;
}

ErrorReport recon_error(const PixelPhantom& reference, const FourierTable& t, double p, int n,
                        const std::vector<std::uint8_t>* mask) {
  if (reference.n != n)
    throw std::invalid_argument("recon_error: reference grid must match n");
  return grid_error(reference, evaluate_series_grid(t, n), p, mask);
}

PixelPhantom rotation_average(const std::vector<std::pair<FourierTable, double>>& recs, int n) {
  if (recs.empty()) throw std::invalid_argument("rotation_average: empty input");
  PixelPhantom acc;
  acc.n = n;
  acc.values.assign(std::size_t(n) * n, 0.0);
  for (const auto& [table, theta] : recs) {
    PixelPhantom g = rotate_grid(evaluate_series_grid(table, n), -theta);
    for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += g.values[i];
  }
  for (double& v : acc.values) v /= double(recs.size());
  return acc;
}

}  // namespace torusct
