#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "torusct/errors.hpp"
#include "torusct/io.hpp"
#include "torusct/rng.hpp"

using namespace torusct;

namespace {

struct TempDir {
  std::string base;
  TempDir() {
    char buf[] = "/tmp/torusct_test_XXXXXX";
    base = mkdtemp(buf);
  }
  std::string operator/(const std::string& name) const { return base + "/" + name; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

FourierTable random_real_table(double r, std::uint64_t seed) {
  FourierTable t = FourierTable::zeros(r, true);
  SplitMix64 rng(seed);
  for (auto& e : t.entries)
    e.c = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
  for (auto& e : t.entries)
    if (e.k.k1 < 0 || (e.k.k1 == 0 && e.k.k2 < 0))
      e.c = std::conj(*t.find({-e.k.k1, -e.k.k2}));
    else if (e.k.k1 == 0 && e.k.k2 == 0)
      e.c = Complex(e.c.real(), 0.0);
  return t;
}

}  // namespace

TEST_CASE("format_g17 round-trips doubles through text") {
  SplitMix64 rng(301);
  for (int i = 0; i < 2000; ++i) {
    double v = (rng.uniform01() - 0.5) * std::pow(10.0, 40.0 * (rng.uniform01() - 0.5));
    CHECK(std::stod(format_g17(v)) == v);
  }
  CHECK(std::stod(format_g17(0.1)) == 0.1);
  CHECK(std::stod(format_g17(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("directions csv round trip") {
  TempDir tmp;
  DirectionSet V = direction_set(7);
  std::string path = tmp / "dirs.csv";
  write_directions_csv(path, V);

  std::string text = slurp(path);
  CHECK(text.substr(0, 4) == "a,b\n");
  CHECK(text.find("1,0\n") != std::string::npos);

  DirectionSet back = read_directions_csv(path);
  REQUIRE(back.members.size() == V.members.size());
  for (size_t i = 0; i < V.members.size(); ++i) CHECK(back.members[i] == V.members[i]);
  CHECK(back.box_radius == V.box_radius);

  // Re-serialization is byte-identical.
  std::string path2 = tmp / "dirs2.csv";
  write_directions_csv(path2, back);
  CHECK(slurp(path2) == text);

  CHECK_THROWS_AS(read_directions_csv(tmp / "absent.csv"), IoError);
}

TEST_CASE("samples csv round trip") {
  TempDir tmp;
  PixelPhantom p = shepp_logan(32);
  GeodesicSamples d = acquire(p, direction_set(3), 16, Rule::Mid);
  std::string path = tmp / "samples.csv";
  write_samples_csv(path, d);

  std::string text = slurp(path);
  CHECK(text.substr(0, text.find('\n')) == "a,b,axis,rule,n_d,l,value");

  GeodesicSamples back = read_samples_csv(path);
  REQUIRE(back.profiles.size() == d.profiles.size());
  for (size_t i = 0; i < d.profiles.size(); ++i) {
    CHECK(back.profiles[i].v == d.profiles[i].v);
    CHECK(back.profiles[i].axis == d.profiles[i].axis);
    CHECK(back.profiles[i].rule == d.profiles[i].rule);
    CHECK(back.profiles[i].n_d == d.profiles[i].n_d);
    REQUIRE(back.profiles[i].values.size() == d.profiles[i].values.size());
    for (size_t l = 0; l < d.profiles[i].values.size(); ++l)
      CHECK(back.profiles[i].values[l] == d.profiles[i].values[l]);
  }

  std::string path2 = tmp / "samples2.csv";
  write_samples_csv(path2, back);
  CHECK(slurp(path2) == text);
}

TEST_CASE("sinogram csv round trip") {
  TempDir tmp;
  PixelPhantom p = shepp_logan(24);
  EuclideanSinogram s =
      radon_simulate(p, {0.0, -0.7853981633974483, 1.1071487177940904}, 65);
  std::string path = tmp / "sino.csv";
  write_sinogram_csv(path, s);

  std::string text = slurp(path);
  CHECK(text.substr(0, text.find('\n')) == "angle_rad,offset,value");

  EuclideanSinogram back = read_sinogram_csv(path);
  REQUIRE(back.projections.size() == s.projections.size());
  for (size_t i = 0; i < s.projections.size(); ++i) {
    CHECK(back.projections[i].angle_rad == s.projections[i].angle_rad);
    REQUIRE(back.projections[i].offsets.size() == s.projections[i].offsets.size());
    for (size_t j = 0; j < s.projections[i].offsets.size(); ++j) {
      CHECK(back.projections[i].offsets[j] == s.projections[i].offsets[j]);
      CHECK(back.projections[i].values[j] == s.projections[i].values[j]);
    }
  }

  std::string path2 = tmp / "sino2.csv";
  write_sinogram_csv(path2, back);
  CHECK(slurp(path2) == text);
}

TEST_CASE("table csv round trip with sidecar") {
  TempDir tmp;
  FourierTable t = random_real_table(5.0, 307);
  std::string path = tmp / "table.csv";
  write_table_csv(path, t);

  std::string text = slurp(path);
  CHECK(text.substr(0, text.find('\n')) == "k1,k2,re,im");
  std::string side = slurp(path + ".json");
  CHECK(side.find("\"r\"") != std::string::npos);
  CHECK(side.find("\"real_flag\"") != std::string::npos);

  FourierTable back = read_table_csv(path);
  CHECK(back.radius == t.radius);
  CHECK(back.real_flag == t.real_flag);
  REQUIRE(back.entries.size() == t.entries.size());
  for (size_t i = 0; i < t.entries.size(); ++i) {
    CHECK(back.entries[i].k == t.entries[i].k);
    CHECK(back.entries[i].c == t.entries[i].c);
  }

  std::string path2 = tmp / "table2.csv";
  write_table_csv(path2, back);
  CHECK(slurp(path2) == text);
  CHECK(slurp(path2 + ".json") == side);

  // Sidecar is required.
  std::string bare = tmp / "bare.csv";
  std::ofstream(bare) << text;
  CHECK_THROWS_AS(read_table_csv(bare), IoError);
}

TEST_CASE("pgm16 stores a quantized affine image") {
  TempDir tmp;
  PixelPhantom p = shepp_logan(48);
  std::string path = tmp / "img.pgm";
  write_pgm16(path, p);

  std::string raw = slurp(path);
  CHECK(raw.substr(0, 3) == "P5\n");
  CHECK(raw.find("48 48\n65535\n") != std::string::npos);
  // Header + 2 bytes per pixel.
  size_t header = raw.find("65535\n") + 6;
  CHECK(raw.size() == header + 2u * 48u * 48u);

  PixelPhantom back = read_pgm16(path);
  REQUIRE(back.n == p.n);
  double lo = 1e300, hi = -1e300;
  for (double v : p.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Quantization error bounded by half a step of the affine map.
  double step = (hi - lo) / 65535.0;
  for (size_t i = 0; i < p.values.size(); ++i)
    CHECK(std::fabs(back.values[i] - p.values[i]) <= 0.5 * step + 1e-12);

  // Extremes are exact.
  CHECK(back.values[0] == p.values[0]);  // 0 outside the head maps back to lo

  // Constant grid: degenerate range writes zeros and reads back the constant.
  PixelPhantom c;
  c.n = 4;
  c.values.assign(16, 2.5);
  std::string cpath = tmp / "const.pgm";
  write_pgm16(cpath, c);
  PixelPhantom cb = read_pgm16(cpath);
  for (double v : cb.values) CHECK(v == 2.5);

  CHECK_THROWS_AS(read_pgm16(tmp / "missing.pgm"), IoError);
}

TEST_CASE("pgm16 with extra sidecar metadata") {
  TempDir tmp;
  PixelPhantom p;
  p.n = 2;
  p.values = {0.0, 1.0, 2.0, 3.0};
  std::string path = tmp / "meta.pgm";
  write_pgm16(path, p, "{\"alpha\": 0.025}");
  std::string side = slurp(path + ".json");
  CHECK(side.find("\"alpha\"") != std::string::npos);
  CHECK(side.find("\"min\"") != std::string::npos);
  CHECK(side.find("\"max\"") != std::string::npos);
  PixelPhantom back = read_pgm16(path);
  CHECK(back.values[0] == 0.0);
  CHECK(back.values[3] == 3.0);
}

TEST_CASE("raster csv round trip") {
  TempDir tmp;
  FourierTable t = random_real_table(2.0, 311);
  PixelPhantom p = evaluate_series_grid(t, 8);
  std::string path = tmp / "raster.csv";
  write_raster_csv(path, p);

  std::string text = slurp(path);
  CHECK(text.substr(0, text.find('\n')) == "x,y,value");

  PixelPhantom back = read_raster_csv(path);
  REQUIRE(back.n == 8);
  for (size_t i = 0; i < p.values.size(); ++i) CHECK(back.values[i] == p.values[i]);

  std::string path2 = tmp / "raster2.csv";
  write_raster_csv(path2, back);
  CHECK(slurp(path2) == text);
}
