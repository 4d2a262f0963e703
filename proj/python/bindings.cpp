#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "torusct/analysis.hpp"
#include "torusct/errors.hpp"
#include "torusct/io.hpp"

namespace py = pybind11;
using namespace torusct;

namespace {

PixelPhantom grid_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1))
    throw std::invalid_argument("grid must be a square 2-D array");
  PixelPhantom p;
  p.n = static_cast<int>(a.shape(0));
  p.values.assign(a.data(), a.data() + std::size_t(p.n) * p.n);
  return p;
}

py::array_t<double> grid_to_array(const PixelPhantom& p) {
  py::array_t<double> a({p.n, p.n});
  std::copy(p.values.begin(), p.values.end(), a.mutable_data());
  return a;
}

AnalyticPhantom phantom_by_name(const std::string& name, double theta, double value, double a) {
  if (name == "flag") return flag_phantom(theta);
  if (name == "constant") return constant_phantom(value);
  if (name == "gaussian") return gaussian_bump(a);
  throw std::invalid_argument("unknown analytic phantom '" + name + "'");
}

std::vector<std::uint8_t> mask_from_obj(const py::object& mask, std::size_t want) {
  std::vector<std::uint8_t> m;
  if (mask.is_none()) return m;
  auto arr = py::array_t<bool, py::array::c_style | py::array::forcecast>::ensure(mask);
  if (!arr || std::size_t(arr.size()) != want) throw std::invalid_argument("mask size mismatch");
  m.resize(want);
  for (std::size_t i = 0; i < want; ++i) m[i] = arr.data()[i] ? 1 : 0;
  return m;
}

}  // namespace

PYBIND11_MODULE(_torusct, m) {
  m.doc() = "X-ray transforms, sampling, and Fourier reconstruction on the flat torus";

  py::register_exception<MissingDirectionError>(m, "MissingDirectionError", PyExc_ValueError);
  py::register_exception<AliasingError>(m, "AliasingError", PyExc_ValueError);
  py::register_exception<MissingAngleError>(m, "MissingAngleError", PyExc_ValueError);
  py::register_exception<DegenerateReferenceError>(m, "DegenerateReferenceError", PyExc_ValueError);

  m.def("reduce", [](int v1, int v2) {
    ReducedDirection d = reduce({v1, v2});
    return std::make_pair(d.a, d.b);
  });
  m.def("height", [](int a, int b) { return height({a, b}); });
  m.def("perp_direction", [](int k1, int k2) {
    ReducedDirection d = perp_direction({k1, k2});
    return std::make_pair(d.a, d.b);
  });
  m.def("direction_set", [](int N) {
    std::vector<std::pair<int, int>> out;
    for (auto d : direction_set(N).members) out.emplace_back(d.a, d.b);
    return out;
  });
  m.def("direction_count", [](int N) { return direction_set(N).members.size(); });
  m.def("phi_bruteforce", &phi_bruteforce);

  m.def("flag_value", &flag_value, py::arg("x"), py::arg("y"), py::arg("theta") = 0.0);
  m.def("shepp_logan", [](int n) { return grid_to_array(shepp_logan(n)); });
  m.def(
      "raster",
      [](const std::string& name, int n, double theta, double value, double a) {
        if (name == "shepp-logan") return grid_to_array(shepp_logan(n));
        return grid_to_array(rasterize(phantom_by_name(name, theta, value, a), n));
      },
      py::arg("name"), py::arg("n"), py::arg("theta") = 0.0, py::arg("value") = 1.0,
      py::arg("a") = 50.0);
  m.def(
      "rotate_grid",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& g, double theta) {
        return grid_to_array(rotate_grid(grid_from_array(g), theta));
      },
      py::arg("grid"), py::arg("theta"));

  m.def(
      "xray_pixel",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& g, double x,
         double y, int v1, int v2) { return xray_pixel(grid_from_array(g), {x, y}, {v1, v2}); },
      py::arg("grid"), py::arg("x"), py::arg("y"), py::arg("v1"), py::arg("v2"));
  m.def(
      "xray_quadrature",
      [](const std::string& name, double theta, double x, double y, int v1, int v2, double tol) {
        return xray_quadrature(phantom_by_name(name, theta, 1.0, 50.0), {x, y}, {v1, v2},
                               QuadratureOptions{tol, 200000});
      },
      py::arg("name"), py::arg("theta"), py::arg("x"), py::arg("y"), py::arg("v1"), py::arg("v2"),
      py::arg("tol") = 1e-9);

  py::class_<GeodesicSamples>(m, "Samples")
      .def_property_readonly("profile_count",
                             [](const GeodesicSamples& d) { return d.profiles.size(); })
      .def("direction",
           [](const GeodesicSamples& d, std::size_t i) {
             return std::make_pair(d.profiles.at(i).v.a, d.profiles.at(i).v.b);
           })
      .def("values",
           [](const GeodesicSamples& d, std::size_t i) {
             const auto& v = d.profiles.at(i).values;
             py::array_t<double> a(py::ssize_t(v.size()));
             std::copy(v.begin(), v.end(), a.mutable_data());
             return a;
           })
      .def("save", [](const GeodesicSamples& d, const std::string& path) {
        write_samples_csv(path, d);
      });

  m.def("save_samples", &write_samples_csv, py::arg("path"), py::arg("samples"));
  m.def("load_samples", &read_samples_csv, py::arg("path"));

  m.def(
      "acquire_pixel",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& g, int r, int n_d,
         const std::string& rule) {
        return acquire(grid_from_array(g), direction_set(r), n_d,
                       rule == "mid" ? Rule::Mid : Rule::Left);
      },
      py::arg("grid"), py::arg("r"), py::arg("n_d"), py::arg("rule") = "left");
  m.def(
      "acquire_analytic",
      [](const std::string& name, double theta, int r, int n_d, const std::string& rule,
         double tol) {
        return acquire(phantom_by_name(name, theta, 1.0, 50.0), direction_set(r), n_d,
                       rule == "mid" ? Rule::Mid : Rule::Left, QuadratureOptions{tol, 200000});
      },
      py::arg("name"), py::arg("theta"), py::arg("r"), py::arg("n_d"), py::arg("rule") = "left",
      py::arg("tol") = 1e-9);
  m.def(
      "add_noise",
      [](const GeodesicSamples& d, double sigma, std::uint64_t seed) {
        return add_noise(d, NoiseSpec{sigma, seed});
      },
      py::arg("samples"), py::arg("sigma"), py::arg("seed"));

  py::class_<FourierTable>(m, "Table")
      .def_property_readonly("radius", [](const FourierTable& t) { return t.radius; })
      .def_property_readonly("real_flag", [](const FourierTable& t) { return t.real_flag; })
      .def("entries",
           [](const FourierTable& t) {
             std::vector<std::tuple<int, int, Complex>> out;
             for (const auto& e : t.entries) out.emplace_back(e.k.k1, e.k.k2, e.c);
             return out;
           })
      .def("at", [](const FourierTable& t, int k1, int k2) { return t.at({k1, k2}); })
      .def(
          "filter",
          [](const FourierTable& t, double alpha, double s) { return tikhonov_filter(t, alpha, s); },
          py::arg("alpha"), py::arg("s"))
      .def(
          "grid", [](const FourierTable& t, int n) { return grid_to_array(evaluate_series_grid(t, n)); },
          py::arg("n"))
      .def("save", [](const FourierTable& t, const std::string& path) { write_table_csv(path, t); });

  m.def("load_table", &read_table_csv, py::arg("path"));
  m.def(
      "reconstruct",
      [](const GeodesicSamples& d, double r, bool real, bool allow_aliasing) {
        return reconstruct_table(d, r, real, allow_aliasing);
      },
      py::arg("samples"), py::arg("r"), py::arg("real") = true,
      py::arg("allow_aliasing") = false);

  m.def(
      "recon_error",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& ref,
         const FourierTable& t, double p, const py::object& mask) {
        PixelPhantom r = grid_from_array(ref);
        std::vector<std::uint8_t> m = mask_from_obj(mask, r.values.size());
        return recon_error(r, t, p, r.n, m.empty() ? nullptr : &m).value;
      },
      py::arg("reference"), py::arg("table"), py::arg("p") = 2.0, py::arg("mask") = py::none());
  m.def(
      "cutoff_error",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& g, double r) {
        return cutoff_error(grid_from_array(g), r);
      },
      py::arg("grid"), py::arg("r"));
  m.def("strategy_bound", &strategy_bound, py::arg("alpha"), py::arg("s"), py::arg("delta"),
        py::arg("eps"), py::arg("f_norm"));
  m.def(
      "verify_strategy",
      [](int trials, double r, double s, double delta, double t, double eps, std::uint64_t seed) {
        StrategyReport rep = verify_strategy(trials, r, s, delta, t, eps, seed);
        py::dict out;
        out["trials"] = rep.trials;
        out["passes"] = rep.passes;
        out["worst_margin"] = rep.worst_margin;
        out["median_error"] = rep.median_error;
        out["alpha"] = rep.alpha;
        return out;
      },
      py::arg("trials"), py::arg("r"), py::arg("s"), py::arg("delta"), py::arg("t"),
      py::arg("eps"), py::arg("seed"));
  m.def(
      "rotation_average",
      [](const std::vector<std::pair<FourierTable, double>>& recs, int n) {
        return grid_to_array(rotation_average(recs, n));
      },
      py::arg("reconstructions"), py::arg("n"));
}
