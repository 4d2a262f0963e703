#include "torusct/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "torusct/errors.hpp"

namespace torusct {

namespace {

// exp(-2 pi i m / N) for m in [0, N): phases from exact integer arithmetic.
std::vector<Complex> twiddle_table(std::size_t N) {
  std::vector<Complex> w(N);
  for (std::size_t m = 0; m < N; ++m) {
    double ang = -kTwoPi * double(m) / double(N);
    w[m] = {std::cos(ang), std::sin(ang)};
  }
  return w;
}

}  // namespace

std::vector<Complex> dft_1d(const std::vector<Complex>& values) {
  const std::size_t N = values.size();
  if (N == 0) throw std::invalid_argument("dft_1d: empty input");
  std::vector<Complex> w = twiddle_table(N);
  std::vector<Complex> out(N);
  for (std::size_t k = 0; k < N; ++k) {
    Complex sum = 0.0;
    std::size_t idx = 0;
    for (std::size_t l = 0; l < N; ++l) {
      sum += values[l] * w[idx];
      idx += k;
      if (idx >= N) idx -= N;
    }
    out[k] = sum / double(N);
  }
  return out;
}

std::vector<Complex> dft_1d(const std::vector<double>& values) {
  return dft_1d(std::vector<Complex>(values.begin(), values.end()));
}

Complex dft_bin(const std::vector<double>& values, long k) {
  const std::size_t N = values.size();
  if (N == 0) throw std::invalid_argument("dft_bin: empty input");
  const long kk = ((k % long(N)) + long(N)) % long(N);
  std::vector<Complex> w = twiddle_table(N);
  Complex sum = 0.0;
  std::size_t idx = 0;
  for (std::size_t l = 0; l < N; ++l) {
    sum += values[l] * w[idx];
    idx += std::size_t(kk);
    if (idx >= N) idx -= N;
  }
  return sum / double(N);
}

FourierTable FourierTable::zeros(double r, bool real_flag) {
  if (r < 0) throw std::invalid_argument("FourierTable: radius must be >= 0");
  FourierTable t;
  t.radius = r;
  t.real_flag = real_flag;
  const int R = static_cast<int>(std::floor(r));
  const double rr = r * r;
  for (int k1 = -R; k1 <= R; ++k1)
    for (int k2 = -R; k2 <= R; ++k2) {
      FourierIndex k{k1, k2};
      if (double(norm2(k)) <= rr) t.entries.push_back({k, 0.0});
    }
  std::sort(t.entries.begin(), t.entries.end(),
            [](const Entry& a, const Entry& b) { return table_order(a.k, b.k); });
  return t;
}

namespace {

template <class Table>
auto* table_find(Table& t, FourierIndex k) {
  auto it = std::lower_bound(
      t.entries.begin(), t.entries.end(), k,
      [](const typename Table::Entry& e, FourierIndex key) { return table_order(e.k, key); });
  if (it == t.entries.end() || it->k != k) return decltype(&it->c)(nullptr);
  return &it->c;
}

}  // namespace

Complex FourierTable::at(FourierIndex k) const {
  const Complex* c = table_find(*this, k);
  return c ? *c : Complex{0.0, 0.0};
}

Complex* FourierTable::find(FourierIndex k) { return table_find(*this, k); }
const Complex* FourierTable::find(FourierIndex k) const { return table_find(*this, k); }

void DataTable::insert(FourierIndex k, Complex value) {
  if (k.k1 == 0 && k.k2 == 0) {
    mean = value;
    return;
  }
  Entry e{k, perp_direction(k), value};
  auto it = std::lower_bound(entries.begin(), entries.end(), k,
                             [](const Entry& a, FourierIndex key) { return table_order(a.k, key); });
  if (it != entries.end() && it->k == k)
    *it = e;
  else
    entries.insert(it, e);
}

const DataTable::Entry* DataTable::find(FourierIndex k) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), k,
                             [](const Entry& a, FourierIndex key) { return table_order(a.k, key); });
  if (it == entries.end() || it->k != k) return nullptr;
  return &*it;
}

namespace {

std::string dir_str(ReducedDirection v) {
  std::ostringstream os;
  os << "(" << v.a << "," << v.b << ")";
  return os.str();
}

std::string idx_str(FourierIndex k) {
  std::ostringstream os;
  os << "(" << k.k1 << "," << k.k2 << ")";
  return os.str();
}

// Profile and axis frequency serving the coefficient at k.
struct SliceRef {
  const Profile* pf;
  int k_axis;
};

SliceRef slice_ref(const GeodesicSamples& d, FourierIndex k) {
  ReducedDirection v = (k.k1 == 0 && k.k2 == 0) ? ReducedDirection{1, 0} : perp_direction(k);
  const Profile* pf = d.find(v);
  if (!pf)
    throw MissingDirectionError("coeff_from_samples: no profile for direction " + dir_str(v) +
                                " required by k = " + idx_str(k));
  int k_axis = (pf->axis == Axis::X) ? k.k1 : k.k2;
  return {pf, k_axis};
}

Complex coeff_from_profile(const Profile& pf, int k_axis) {
  Complex val = dft_bin(pf.values, k_axis);
  if (pf.rule == Rule::Mid && k_axis != 0) {
    double ang = -kTwoPi * 0.5 * double(k_axis) / double(pf.n_d);
    val *= Complex{std::cos(ang), std::sin(ang)};
  }
  return val;
}

}  // namespace

Complex coeff_from_samples(const GeodesicSamples& d, FourierIndex k, bool allow_aliasing) {
  SliceRef s = slice_ref(d, k);
  if (!allow_aliasing && 2 * std::abs(s.k_axis) >= s.pf->n_d)
    throw AliasingError("coeff_from_samples: bin " + std::to_string(s.k_axis) +
                        " for k = " + idx_str(k) + " aliases at n_d = " +
                        std::to_string(s.pf->n_d));
  return coeff_from_profile(*s.pf, s.k_axis);
}

FourierTable reconstruct_table(const GeodesicSamples& d, double r, bool real_phantom,
                               bool allow_aliasing) {
  FourierTable t = FourierTable::zeros(r, real_phantom);
  std::string missing, aliased;
  for (auto& e : t.entries) {
    try {
      SliceRef s = slice_ref(d, e.k);
      if (!allow_aliasing && 2 * std::abs(s.k_axis) >= s.pf->n_d) {
        aliased += (aliased.empty() ? "" : ", ") + idx_str(e.k);
        continue;
      }
      e.c = coeff_from_profile(*s.pf, s.k_axis);
    } catch (const MissingDirectionError&) {
      missing += (missing.empty() ? "" : ", ") + idx_str(e.k);
    }
  }
  if (!missing.empty())
    throw MissingDirectionError("reconstruct_table: no profile for k in {" + missing + "}");
  if (!aliased.empty())
    throw AliasingError("reconstruct_table: aliased bins for k in {" + aliased +
                        "}; raise n_d above 2 max|k_axis|");
  if (real_phantom) {
    // Project onto real phantoms: conjugate-symmetrize the two independent reads.
    FourierTable raw = t;
    for (auto& e : t.entries)
      e.c = 0.5 * (raw.at(e.k) + std::conj(raw.at({-e.k.k1, -e.k.k2})));
  }
  return t;
}

FourierTable tikhonov_filter(const FourierTable& t, double alpha, double s) {
  if (alpha < 0) throw std::invalid_argument("tikhonov_filter: alpha must be >= 0");
  FourierTable out = t;
  for (auto& e : out.entries) {
    double w = 1.0 / (1.0 + alpha * std::pow(1.0 + double(norm2(e.k)), s));
    e.c *= w;
  }
  return out;
}

std::vector<Complex> evaluate_series(const FourierTable& t, const std::vector<Point>& pts) {
  std::vector<Complex> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Complex sum = 0.0;
    for (const auto& e : t.entries) {
      double ang = kTwoPi * (e.k.k1 * pts[i].x + e.k.k2 * pts[i].y);
      sum += e.c * Complex{std::cos(ang), std::sin(ang)};
    }
    out[i] = sum;
  }
  return out;
}

PixelPhantom evaluate_series_grid(const FourierTable& t, int n) {
  if (n < 1) throw std::invalid_argument("evaluate_series_grid: n must be >= 1");
  int R = 0;
  for (const auto& e : t.entries) R = std::max({R, std::abs(e.k.k1), std::abs(e.k.k2)});
  const int W = 2 * R + 1;
  // phase[m + R][j] = exp(2 pi i m (j + 1/2) / n)
  std::vector<Complex> phase(std::size_t(W) * n);
  for (int m = -R; m <= R; ++m)
    for (int j = 0; j < n; ++j) {
      double ang = kTwoPi * m * (j + 0.5) / n;
      phase[std::size_t(m + R) * n + j] = {std::cos(ang), std::sin(ang)};
    }
  // Split the sum: S[k1 + R][i] = sum_{k2} c(k1,k2) phase[k2][i].
  std::vector<Complex> S(std::size_t(W) * n, Complex{0.0, 0.0});
  std::vector<char> used(W, 0);
  for (const auto& e : t.entries) {
    used[e.k.k1 + R] = 1;
    const Complex* py = &phase[std::size_t(e.k.k2 + R) * n];
    Complex* row = &S[std::size_t(e.k.k1 + R) * n];
    for (int i = 0; i < n; ++i) row[i] += e.c * py[i];
  }
  PixelPhantom out;
  out.n = n;
  out.values.assign(std::size_t(n) * n, 0.0);
  for (int m = 0; m < W; ++m) {
    if (!used[m]) continue;
    const Complex* px = &phase[std::size_t(m) * n];
    const Complex* row = &S[std::size_t(m) * n];
    for (int i = 0; i < n; ++i) {
      const Complex si = row[i];
      double* outrow = &out.values[std::size_t(i) * n];
      for (int j = 0; j < n; ++j)
        outrow[j] += si.real() * px[j].real() - si.imag() * px[j].imag();
    }
  }
  return out;
}

DataTable xray_table(const FourierTable& t, const DirectionSet& dirs) {
  DataTable out;
  for (const auto& e : t.entries) {
    if (e.k.k1 == 0 && e.k.k2 == 0) {
      out.mean = e.c;
      continue;
    }
    ReducedDirection v = perp_direction(e.k);
    if (!dirs.contains(v))
      throw MissingDirectionError("xray_table: direction " + dir_str(v) + " for k = " +
                                  idx_str(e.k) + " is not in the direction set");
    out.entries.push_back({e.k, v, e.c});  // t.entries already in table order
  }
  return out;
}

FourierTable adjoint(const DataTable& d, double r) {
  FourierTable t = FourierTable::zeros(r, false);
  for (auto& e : t.entries) {
    if (e.k.k1 == 0 && e.k.k2 == 0) {
      e.c = d.mean.value_or(0.0);
    } else if (const DataTable::Entry* de = d.find(e.k)) {
      e.c = de->c;
    }
  }
  return t;
}

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place radix-2 FFT of sign exp(-2 pi i ...), no normalization.
void fft_pow2(Complex* a, int n) {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    double ang = -kTwoPi / len;
    Complex wl{std::cos(ang), std::sin(ang)};
    for (int i = 0; i < n; i += len) {
      Complex w{1.0, 0.0};
      for (int j = 0; j < len / 2; ++j) {
        Complex u = a[i + j], v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

void dft_line(Complex* a, int n, const std::vector<Complex>& w, Complex* scratch) {
  for (int k = 0; k < n; ++k) {
    Complex sum = 0.0;
    std::size_t idx = 0;
    for (int l = 0; l < n; ++l) {
      sum += a[l] * w[idx];
      idx += std::size_t(k);
      if (idx >= std::size_t(n)) idx -= std::size_t(n);
    }
    scratch[k] = sum;
  }
  std::copy(scratch, scratch + n, a);
}

}  // namespace

std::vector<Complex> dft2_grid(const PixelPhantom& p) {
  const int n = p.n;
  if (n < 1) throw std::invalid_argument("dft2_grid: empty grid");
  std::vector<Complex> F(p.values.begin(), p.values.end());
  const bool fast = is_pow2(n);
  std::vector<Complex> w = fast ? std::vector<Complex>{} : twiddle_table(std::size_t(n));
  std::vector<Complex> col(n), scratch(n);
  for (int i = 0; i < n; ++i) {
    Complex* row = &F[std::size_t(i) * n];
    if (fast)
      fft_pow2(row, n);
    else
      dft_line(row, n, w, scratch.data());
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = F[std::size_t(i) * n + j];
    if (fast)
      fft_pow2(col.data(), n);
    else
      dft_line(col.data(), n, w, scratch.data());
    for (int i = 0; i < n; ++i) F[std::size_t(i) * n + j] = col[i];
  }
  // Normalize and shift phases to cell centers; the half-cell twiddle uses the
  // signed frequency so that bins read back as coefficients on [-n/2, n/2).
  const double inv = 1.0 / (double(n) * double(n));
  std::vector<Complex> half(n);
  for (int b = 0; b < n; ++b) {
    int k = (2 * b < n) ? b : b - n;
    double ang = -kTwoPi * 0.5 * double(k) / double(n);
    half[b] = Complex{std::cos(ang), std::sin(ang)};
  }
  for (int b2 = 0; b2 < n; ++b2)
    for (int b1 = 0; b1 < n; ++b1) F[std::size_t(b2) * n + b1] *= inv * half[b1] * half[b2];
  return F;
}

Complex dft2_at(const std::vector<Complex>& F, int n, FourierIndex k) {
  auto wrap = [n](int k) { return ((k % n) + n) % n; };
  return F[std::size_t(wrap(k.k2)) * n + wrap(k.k1)];
}

FourierTable grid_fourier_table(const PixelPhantom& p, double r) {
  if (!(r <= p.n / 2.0 - 1.0))
    throw std::invalid_argument("grid_fourier_table: requires r <= n/2 - 1");
  std::vector<Complex> F = dft2_grid(p);
  FourierTable t = FourierTable::zeros(r, true);
  for (auto& e : t.entries) e.c = dft2_at(F, p.n, e.k);
  return t;
}

}  // namespace torusct
