#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "torusct/analysis.hpp"
#include "torusct/errors.hpp"
#include "torusct/rng.hpp"

using namespace torusct;

namespace {

FourierTable random_real_table(double r, std::uint64_t seed) {
  FourierTable t = FourierTable::zeros(r, true);
  SplitMix64 rng(seed);
  for (auto& e : t.entries)
    e.c = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
  for (auto& e : t.entries) {
    if (e.k.k1 < 0 || (e.k.k1 == 0 && e.k.k2 < 0)) {
      e.c = std::conj(*t.find({-e.k.k1, -e.k.k2}));
    } else if (e.k.k1 == 0 && e.k.k2 == 0) {
      e.c = Complex(e.c.real(), 0.0);
    }
  }
  return t;
}

}  // namespace

TEST_CASE("sobolev_norm hand values") {
  FourierTable t = FourierTable::zeros(1.0);
  *t.find({0, 0}) = Complex(3.0, 0.0);
  *t.find({1, 0}) = Complex(0.0, 2.0);
  *t.find({-1, 0}) = Complex(0.0, -2.0);
  // s = 0: plain L2: sqrt(9 + 4 + 4).
  CHECK(sobolev_norm_table(t, 0.0) == doctest::Approx(std::sqrt(17.0)).epsilon(1e-14));
  // s = 1: weights <0,0> = 1 and <1,0>^2 = 2.
  CHECK(sobolev_norm_table(t, 1.0) == doctest::Approx(std::sqrt(9.0 + 2.0 * 4.0 + 2.0 * 4.0)).epsilon(1e-14));
  // s = -1: weights 1 and 1/2.
  CHECK(sobolev_norm_table(t, -1.0) == doctest::Approx(std::sqrt(9.0 + 2.0 + 2.0)).epsilon(1e-14));

  DataTable d;
  d.insert({0, 0}, Complex(3.0, 0.0));
  d.insert({1, 0}, Complex(0.0, 2.0));
  d.insert({-1, 0}, Complex(0.0, -2.0));
  CHECK(sobolev_norm_data(d, 1.0) ==
        doctest::Approx(sobolev_norm_table(t, 1.0)).epsilon(1e-14));
}

TEST_CASE("slice map preserves every Sobolev norm") {
  DirectionSet V = direction_set(6);
  for (int trial = 0; trial < 10; ++trial) {
    FourierTable f = random_real_table(6.0, 200 + trial);
    DataTable g = xray_table(f, V);
    for (double s : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      double nf = sobolev_norm_table(f, s);
      double ng = sobolev_norm_data(g, s);
      CHECK(std::fabs(nf - ng) <= 1e-12 * nf);
    }
  }
}

TEST_CASE("tikhonov_objective and its closed-form minimizer") {
  DirectionSet V = direction_set(4);
  FourierTable f = random_real_table(4.0, 211);
  DataTable g = xray_table(f, V);

  // alpha = 0: the generating table achieves objective 0.
  CHECK(tikhonov_objective(f, g, 0.0, 0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));

  // alpha > 0: filtered adjoint with exponent s - r minimizes; any perturbation
  // of any single coefficient increases the objective.
  double alpha = 0.17, r = -0.5, s = 0.8;
  FourierTable best = tikhonov_filter(adjoint(g, 4.0), alpha, s - r);
  double base = tikhonov_objective(best, g, alpha, r, s);
  SplitMix64 rng(223);
  for (int i = 0; i < 200; ++i) {
    FourierTable pert = best;
    size_t idx = size_t(rng.next() % pert.entries.size());
    double mag = std::pow(10.0, -3.0 * rng.uniform01());
    pert.entries[idx].c += Complex(mag * (rng.uniform01() - 0.5), mag * (rng.uniform01() - 0.5));
    CHECK(tikhonov_objective(pert, g, alpha, r, s) > base);
  }

  // Data outside the table ball still contributes to the mismatch.
  FourierTable small = FourierTable::zeros(1.0);
  double obj = tikhonov_objective(small, g, 0.0, 0.0, 0.0);
  double mass_outside = 0.0;
  for (const auto& e : g.entries)
    if (norm2(e.k) > 1) mass_outside += std::norm(e.c);
  CHECK(obj >= mass_outside - 1e-13);
}

TEST_CASE("strategy_c frozen values") {
  CHECK(strategy_c(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(strategy_c(0.25) == doctest::Approx(0.5698767642386944).epsilon(1e-14));
  CHECK(strategy_c(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS(strategy_c(0.0));
  CHECK_THROWS(strategy_c(1.5));
}

TEST_CASE("strategy_bound values and preconditions") {
  // delta/(2s) = 1/2: bound = sqrt(alpha) * 0.5 * fnorm + eps/alpha.
  CHECK(strategy_bound(0.25, 1.0, 1.0, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(strategy_bound(0.04, 1.0, 1.0, 0.01, 2.0) ==
        doctest::Approx(0.2 * 0.5 * 2.0 + 0.25).epsilon(1e-13));
  // Validity region.
  CHECK_THROWS(strategy_bound(0.5, 1.0, 2.5, 0.0, 1.0));   // delta >= 2s
  CHECK_THROWS(strategy_bound(1.2, 1.0, 1.0, 0.0, 1.0));   // alpha > 2s/delta - 1
  CHECK_THROWS(strategy_bound(0.0, 1.0, 1.0, 0.01, 1.0));  // alpha = 0
}

TEST_CASE("verify_strategy holds on a small run") {
  StrategyReport rep = verify_strategy(10, 0.0, 1.0, 1.0, 0.0, 1e-3, 42);
  CHECK(rep.trials == 10);
  CHECK(rep.passes == 10);
  CHECK(rep.worst_margin > 0.0);
  CHECK(rep.median_error > 0.0);
  CHECK(rep.alpha == doctest::Approx(std::sqrt(1e-3)).epsilon(1e-15));
  // Same seed reproduces bit-identical results.
  StrategyReport rep2 = verify_strategy(10, 0.0, 1.0, 1.0, 0.0, 1e-3, 42);
  CHECK(rep.worst_margin == rep2.worst_margin);
  CHECK(rep.median_error == rep2.median_error);
}

TEST_CASE("cutoff_error of a band-limited raster is zero") {
  FourierTable t = random_real_table(3.0, 229);
  PixelPhantom g = evaluate_series_grid(t, 64);
  CHECK(cutoff_error(g, 3.0) == doctest::Approx(0.0).epsilon(1e-12));
  // Shrinking the ball leaves exactly the excluded shell mass.
  double c1 = cutoff_error(g, 1.0);
  double want = 0.0;
  for (const auto& e : t.entries)
    if (norm2(e.k) > 1) want += std::norm(e.c);
  CHECK(c1 == doctest::Approx(want).epsilon(1e-10));
  // Monotone in r.
  CHECK(cutoff_error(g, 2.0) <= c1 + 1e-15);
  CHECK_THROWS(cutoff_error(g, 40.0));  // needs r <= n/2 - 1
}

TEST_CASE("grid_error norms") {
  PixelPhantom ref;
  ref.n = 2;
  ref.values = {1.0, 2.0, 0.0, 3.0};
  PixelPhantom got = ref;
  got.values[0] += 0.5;
  got.values[3] -= 1.5;

  ErrorReport e2 = grid_error(ref, got, 2.0);
  CHECK(e2.value == doctest::Approx(std::sqrt(0.25 + 2.25) / std::sqrt(1.0 + 4.0 + 9.0)));
  ErrorReport e1 = grid_error(ref, got, 1.0);
  CHECK(e1.value == doctest::Approx((0.5 + 1.5) / 6.0));
  ErrorReport einf = grid_error(ref, got, std::numeric_limits<double>::infinity());
  CHECK(einf.value == doctest::Approx(1.5 / 3.0));
  CHECK(einf.metric == "recon_error");
  CHECK_FALSE(einf.masked);

  // Masking to the support drops the zero cell.
  auto mask = support_mask(ref);
  REQUIRE(mask.size() == 4);
  CHECK(mask == std::vector<std::uint8_t>{1, 1, 0, 1});
  got.values[2] = 99.0;  // changes nothing under the mask
  ErrorReport m2 = grid_error(ref, got, 2.0, &mask);
  CHECK(m2.masked);
  CHECK(m2.value == doctest::Approx(std::sqrt(0.25 + 2.25) / std::sqrt(14.0)));

  CHECK_THROWS_AS(grid_error(ref, got, 3.0), std::invalid_argument);
  PixelPhantom zero;
  zero.n = 2;
  zero.values.assign(4, 0.0);
  CHECK_THROWS_AS(grid_error(zero, got, 2.0), DegenerateReferenceError);
}

TEST_CASE("recon_error vanishes for the generating series") {
  FourierTable t = random_real_table(4.0, 233);
  PixelPhantom ref = evaluate_series_grid(t, 48);
  ErrorReport e = recon_error(ref, t, 2.0, 48);
  CHECK(e.value < 1e-10);
  CHECK(e.grid == 48);

  // Zero table against a nonzero reference errs at exactly 1 in L2.
  FourierTable z = FourierTable::zeros(4.0);
  ErrorReport e0 = recon_error(ref, z, 2.0, 48);
  CHECK(e0.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rotation_average of one unrotated table is its grid") {
  FourierTable t = random_real_table(3.0, 239);
  PixelPhantom direct = evaluate_series_grid(t, 32);
  PixelPhantom avg = rotation_average({{t, 0.0}}, 32);
  REQUIRE(avg.n == 32);
  for (size_t i = 0; i < direct.values.size(); ++i)
    CHECK(avg.values[i] == doctest::Approx(direct.values[i]).epsilon(1e-13));

  // Averaging a table with itself leaves it unchanged.
  PixelPhantom avg2 = rotation_average({{t, 0.0}, {t, 0.0}}, 32);
  for (size_t i = 0; i < direct.values.size(); ++i)
    CHECK(avg2.values[i] == doctest::Approx(direct.values[i]).epsilon(1e-13));
}
