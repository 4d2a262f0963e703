#include "torusct/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "torusct/errors.hpp"

namespace torusct {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw IoError("cannot open for writing: " + path);
  return f;
}

std::ifstream open_in(const std::string& path, bool binary = false) {
  std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
  if (!f) throw IoError("cannot open for reading: " + path);
  return f;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& path) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw IoError("bad number '" + s + "' in " + path);
  return v;
}

long parse_long(const std::string& s, const std::string& path) {
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str()) throw IoError("bad integer '" + s + "' in " + path);
  return v;
}

void expect_header(std::ifstream& f, const std::string& want, const std::string& path) {
  std::string line;
  if (!std::getline(f, line)) throw IoError("empty file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != want) throw IoError("expected header '" + want + "' in " + path);
}

void write_sidecar(const std::string& path, const json& j) {
  std::ofstream f = open_out(path + ".json");
  f << j.dump(2) << "\n";
}

json read_sidecar(const std::string& path) {
  std::ifstream f = open_in(path + ".json");
  json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw IoError("bad sidecar " + path + ".json: " + e.what());
  }
  return j;
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_directions_csv(const std::string& path, const DirectionSet& s) {
  std::ofstream f = open_out(path);
  f << "a,b\n";
  for (auto d : s.members) f << d.a << "," << d.b << "\n";
}

DirectionSet read_directions_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  expect_header(f, "a,b", path);
  DirectionSet s;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line == "\r") continue;
    auto cols = split_csv(line);
    if (cols.size() != 2) throw IoError("bad direction row in " + path);
    ReducedDirection d{int(parse_long(cols[0], path)), int(parse_long(cols[1], path))};
    s.members.push_back(d);
    s.box_radius = std::max(s.box_radius, height(d));
  }
  return s;
}

void write_samples_csv(const std::string& path, const GeodesicSamples& d) {
  std::ofstream f = open_out(path);
  f << "a,b,axis,rule,n_d,l,value\n";
  for (const auto& pf : d.profiles) {
    const char* axis = pf.axis == Axis::X ? "x" : "y";
    const char* rule = pf.rule == Rule::Left ? "left" : "mid";
    for (std::size_t l = 0; l < pf.values.size(); ++l)
      f << pf.v.a << "," << pf.v.b << "," << axis << "," << rule << "," << pf.n_d << "," << l
        << "," << format_g17(pf.values[l]) << "\n";
  }
}

GeodesicSamples read_samples_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  expect_header(f, "a,b,axis,rule,n_d,l,value", path);
  GeodesicSamples d;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line == "\r") continue;
    auto cols = split_csv(line);
    if (cols.size() != 7) throw IoError("bad samples row in " + path);
    ReducedDirection v{int(parse_long(cols[0], path)), int(parse_long(cols[1], path))};
    if (d.profiles.empty() || !(d.profiles.back().v == v)) {
      Profile pf;
      pf.v = v;
      if (cols[2] == "x")
        pf.axis = Axis::X;
      else if (cols[2] == "y")
        pf.axis = Axis::Y;
      else
        throw IoError("bad axis '" + cols[2] + "' in " + path);
      if (cols[3] == "left")
        pf.rule = Rule::Left;
      else if (cols[3] == "mid")
        pf.rule = Rule::Mid;
      else
        throw IoError("bad rule '" + cols[3] + "' in " + path);
      pf.n_d = int(parse_long(cols[4], path));
      if (pf.n_d < 1) throw IoError("bad n_d in " + path);
      pf.values.assign(pf.n_d, 0.0);
      d.profiles.push_back(std::move(pf));
    }
    Profile& pf = d.profiles.back();
    long l = parse_long(cols[5], path);
    if (l < 0 || l >= pf.n_d) throw IoError("sample index out of range in " + path);
    pf.values[l] = parse_double(cols[6], path);
  }
  return d;
}

void write_sinogram_csv(const std::string& path, const EuclideanSinogram& s) {
  std::ofstream f = open_out(path);
  f << "angle_rad,offset,value\n";
  for (const auto& pr : s.projections) {
    const std::string ang = format_g17(pr.angle_rad);
    for (std::size_t j = 0; j < pr.offsets.size(); ++j)
      f << ang << "," << format_g17(pr.offsets[j]) << "," << format_g17(pr.values[j]) << "\n";
  }
}

EuclideanSinogram read_sinogram_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  expect_header(f, "angle_rad,offset,value", path);
  EuclideanSinogram s;
  std::string line;
  std::string prev_angle;
  while (std::getline(f, line)) {
    if (line.empty() || line == "\r") continue;
    auto cols = split_csv(line);
    if (cols.size() != 3) throw IoError("bad sinogram row in " + path);
    if (s.projections.empty() || cols[0] != prev_angle) {
      Projection pr;
      pr.angle_rad = parse_double(cols[0], path);
      s.projections.push_back(std::move(pr));
      prev_angle = cols[0];
    }
    Projection& pr = s.projections.back();
    pr.offsets.push_back(parse_double(cols[1], path));
    pr.values.push_back(parse_double(cols[2], path));
  }
  return s;
}

void write_table_csv(const std::string& path, const FourierTable& t) {
  std::ofstream f = open_out(path);
  f << "k1,k2,re,im\n";
  for (const auto& e : t.entries)
    f << e.k.k1 << "," << e.k.k2 << "," << format_g17(e.c.real()) << ","
      << format_g17(e.c.imag()) << "\n";
  write_sidecar(path, json{{"r", t.radius}, {"real_flag", t.real_flag}});
}

FourierTable read_table_csv(const std::string& path) {
  json meta = read_sidecar(path);
  if (!meta.contains("r") || !meta.contains("real_flag"))
    throw IoError("table sidecar missing r/real_flag: " + path + ".json");
  std::ifstream f = open_in(path);
  expect_header(f, "k1,k2,re,im", path);
  FourierTable t;
  t.radius = meta["r"].get<double>();
  t.real_flag = meta["real_flag"].get<bool>();
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line == "\r") continue;
    auto cols = split_csv(line);
    if (cols.size() != 4) throw IoError("bad table row in " + path);
    FourierIndex k{int(parse_long(cols[0], path)), int(parse_long(cols[1], path))};
    t.entries.push_back({k, Complex{parse_double(cols[2], path), parse_double(cols[3], path)}});
  }
  std::sort(t.entries.begin(), t.entries.end(),
            [](const FourierTable::Entry& a, const FourierTable::Entry& b) {
              return table_order(a.k, b.k);
            });
  return t;
}

void write_pgm16(const std::string& path, const PixelPhantom& p, const std::string& extra_json) {
  if (p.n < 1) throw std::invalid_argument("write_pgm16: empty grid");
  double lo = p.values[0], hi = p.values[0];
  for (double v : p.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::ofstream f = open_out(path, true);
  f << "P5\n" << p.n << " " << p.n << "\n65535\n";
  const double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;
  std::vector<unsigned char> row(std::size_t(p.n) * 2);
  for (int i = p.n - 1; i >= 0; --i) {  // PGM runs top-down, the grid bottom-up
    for (int j = 0; j < p.n; ++j) {
      long q = std::lround((p.at(i, j) - lo) * scale);
      q = std::clamp(q, 0L, 65535L);
      row[std::size_t(j) * 2] = static_cast<unsigned char>(q >> 8);
      row[std::size_t(j) * 2 + 1] = static_cast<unsigned char>(q & 0xff);
    }
    f.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size()));
  }
  json meta{{"min", lo}, {"max", hi}, {"n", p.n}};
  if (!extra_json.empty()) {
    json extra = json::parse(extra_json);
    for (auto& [key, val] : extra.items()) meta[key] = val;
  }
  write_sidecar(path, meta);
}

PixelPhantom read_pgm16(const std::string& path) {
  json meta = read_sidecar(path);
  if (!meta.contains("min") || !meta.contains("max") || !meta.contains("n"))
    throw IoError("image sidecar missing min/max/n: " + path + ".json");
  std::ifstream f = open_in(path, true);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  f >> magic >> w >> h >> maxval;
  f.get();  // the single whitespace after maxval
  if (magic != "P5" || maxval != 65535 || w != h || w < 1)
    throw IoError("not a square 16-bit PGM: " + path);
  if (w != meta["n"].get<int>()) throw IoError("PGM size disagrees with sidecar: " + path);
  PixelPhantom p;
  p.n = w;
  p.values.assign(std::size_t(w) * w, 0.0);
  const double lo = meta["min"].get<double>(), hi = meta["max"].get<double>();
  std::vector<unsigned char> row(std::size_t(w) * 2);
  for (int i = w - 1; i >= 0; --i) {
    f.read(reinterpret_cast<char*>(row.data()), std::streamsize(row.size()));
    if (!f) throw IoError("truncated PGM: " + path);
    for (int j = 0; j < w; ++j) {
      int q = (int(row[std::size_t(j) * 2]) << 8) | int(row[std::size_t(j) * 2 + 1]);
      p.at(i, j) = lo + q * (hi - lo) / 65535.0;
    }
  }
  return p;
}

void write_raster_csv(const std::string& path, const PixelPhantom& p) {
  std::ofstream f = open_out(path);
  f << "x,y,value\n";
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      f << format_g17((j + 0.5) / p.n) << "," << format_g17((i + 0.5) / p.n) << ","
        << format_g17(p.at(i, j)) << "\n";
}

PixelPhantom read_raster_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  expect_header(f, "x,y,value", path);
  std::vector<double> vals;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line == "\r") continue;
    auto cols = split_csv(line);
    if (cols.size() != 3) throw IoError("bad raster row in " + path);
    vals.push_back(parse_double(cols[2], path));
  }
  int n = static_cast<int>(std::lround(std::sqrt(double(vals.size()))));
  if (std::size_t(n) * n != vals.size()) throw IoError("raster is not square: " + path);
  PixelPhantom p;
  p.n = n;
  p.values = std::move(vals);
  return p;
}

}  // namespace torusct
