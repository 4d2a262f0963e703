#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "torusct/transform.hpp"

namespace torusct {

// H^s norm: sqrt(sum <k>^(2s) |c(k)|^2).
double sobolev_norm_table(const FourierTable& t, double s);
// Same weights on data entries; the shared k = 0 value is counted once.
double sobolev_norm_data(const DataTable& d, double s);

// ||I f - g||_{H^r}^2 + alpha ||f||_{H^s}^2, the data mismatch taken over the
// union of the table ball and the data support (the slice map preserves k).
double tikhonov_objective(const FourierTable& f, const DataTable& g, double alpha, double r,
                          double s);

// C(x) = x (1/x - 1)^(1-x) on (0, 1].
double strategy_c(double x);

// Worst-case reconstruction error bound alpha^(delta/2s) C(delta/2s) f_norm + eps/alpha.
// Requires 0 < delta < 2s and 0 < alpha <= 2s/delta - 1 (alpha unconstrained when eps = 0
// has the same validity region; the check is always enforced).
double strategy_bound(double alpha, double s, double delta, double eps, double f_norm);

struct StrategyReport {
  int trials = 0;
  int passes = 0;
  double worst_margin = 0.0;  // min over trials of bound - error
  double median_error = 0.0;
  double r = 0, s = 1, delta = 1, t = 0, eps = 0, alpha = 0;
  std::uint64_t seed = 0;
};

// Randomized check of the regularization strategy at alpha = sqrt(eps): random
// unit-H^(r+delta) tables on |k| <= 20, data noise of H^r size eps, Tikhonov
// reconstruction, error in H^t against strategy_bound.
StrategyReport verify_strategy(int trials, double r, double s, double delta, double t, double eps,
                               std::uint64_t seed);

// L^2 mass of the rasterized phantom outside the grid-DFT ball |k| <= r.
double cutoff_error(const PixelPhantom& p, double r);

struct ErrorReport {
  std::string metric;
  double p = 2;  // 1, 2, or infinity
  double value = 0;
  int grid = 0;
  bool masked = false;
};

std::vector<std::uint8_t> support_mask(const PixelPhantom& reference);

// Relative L^p error of the evaluated series against the reference grid,
// optionally restricted to mask != 0 (mask size must match the grid).
ErrorReport recon_error(const PixelPhantom& reference, const FourierTable& t, double p, int n,
                        const std::vector<std::uint8_t>* mask = nullptr);
// Same metric for a precomputed grid.
ErrorReport grid_error(const PixelPhantom& reference, const PixelPhantom& got, double p,
                       const std::vector<std::uint8_t>* mask = nullptr);

// Mean over k of rotate_grid(evaluate_series_grid(t_k, n), -theta_k).
PixelPhantom rotation_average(const std::vector<std::pair<FourierTable, double>>& recs, int n);

}  // namespace torusct
