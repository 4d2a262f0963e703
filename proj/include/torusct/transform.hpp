#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "torusct/forward.hpp"

namespace torusct {

using Complex = std::complex<double>;

// DFT(f)_k = (1/N) sum_l f_l exp(-2 pi i k l / N). Direct evaluation; this is
// the reference transform the sampling rules are stated against.
std::vector<Complex> dft_1d(const std::vector<Complex>& values);
std::vector<Complex> dft_1d(const std::vector<double>& values);

// Single bin of the same transform, k interpreted mod N.
Complex dft_bin(const std::vector<double>& values, long k);

// Entry order shared by tables and their serialization.
inline bool table_order(FourierIndex l, FourierIndex r) {
  long long nl = norm2(l), nr = norm2(r);
  if (nl != nr) return nl < nr;
  return l < r;
}

// Fourier coefficients supported on the ball |k| <= r, sorted by table_order.
struct FourierTable {
  double radius = 0.0;
  bool real_flag = true;  // table represents a real-valued function
  struct Entry {
    FourierIndex k;
    Complex c;
  };
  std::vector<Entry> entries;

  static FourierTable zeros(double r, bool real_flag = true);
  Complex at(FourierIndex k) const;  // 0 outside the support
  Complex* find(FourierIndex k);
  const Complex* find(FourierIndex k) const;
};

// X-ray data indexed by frequency: the entry at k carries the implied direction
// perp_direction(k), so a pair with k . v != 0 is unrepresentable by design.
struct DataTable {
  struct Entry {
    FourierIndex k;
    ReducedDirection v;
    Complex c;
  };
  std::vector<Entry> entries;   // table_order, k != 0
  std::optional<Complex> mean;  // the k = 0 value shared by every direction
  void insert(FourierIndex k, Complex value);
  const Entry* find(FourierIndex k) const;
};

// Fourier coefficient of the sampled data at k: picks the profile of
// perp_direction(k) (the (1,0) profile for k = 0), reads the 1-D DFT bin of
// the frequency along the profile axis, and undoes the mid-rule phase shift.
// Throws MissingDirectionError / AliasingError; aliasing means 2|k_axis| >= n_d.
Complex coeff_from_samples(const GeodesicSamples& d, FourierIndex k, bool allow_aliasing = false);

// Coefficients for every |k| <= r via coeff_from_samples. real_phantom pins the
// conjugate symmetry c(-k) = conj(c(k)) by averaging the two independent reads.
FourierTable reconstruct_table(const GeodesicSamples& d, double r, bool real_phantom = true,
                               bool allow_aliasing = false);

// Frequency multiplier 1/(1 + alpha <k>^(2s)); alpha = 0 is the identity.
FourierTable tikhonov_filter(const FourierTable& t, double alpha, double s);

// Trigonometric series evaluation at arbitrary points.
std::vector<Complex> evaluate_series(const FourierTable& t, const std::vector<Point>& pts);
// Cell-center grid evaluation; stores the real part.
PixelPhantom evaluate_series_grid(const FourierTable& t, int n);

// Slice-theorem data of a coefficient table over a covering direction set.
DataTable xray_table(const FourierTable& t, const DirectionSet& dirs);

// Adjoint of the slice map: copies data values back onto the ball |k| <= r.
FourierTable adjoint(const DataTable& d, double r);

// Grid DFT with 1/n^2 normalization and cell-center phases, so that bin k of a
// rasterized series matches the series coefficient up to aliasing. Layout:
// F[wrap(k2) * n + wrap(k1)].
std::vector<Complex> dft2_grid(const PixelPhantom& p);
Complex dft2_at(const std::vector<Complex>& F, int n, FourierIndex k);
// Table of grid-DFT coefficients on |k| <= r; requires r <= n/2 - 1.
FourierTable grid_fourier_table(const PixelPhantom& p, double r);

}  // namespace torusct
