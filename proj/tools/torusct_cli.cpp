#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torusct/errors.hpp"
#include "torusct/io.hpp"

using namespace torusct;
using nlohmann::json;

namespace {

double deg2rad(double deg) { return deg * kTwoPi / 360.0; }

// Config-file fallback: a flag not given on the command line takes its value
// from the JSON document; explicit flags always win.
template <class T>
void cfg_fill(const json& cfg, const CLI::Option* opt, const char* key, T& var) {
  if (opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config: " + path);
  try {
    json j;
    f >> j;
    return j;
  } catch (const std::exception& e) {
    throw IoError("bad config " + path + ": " + e.what());
  }
}

struct PhantomSpec {
  std::string name = "flag";
  double theta_deg = 0.0;
  double value = 1.0;  // constant phantom level
  double a = 50.0;     // gaussian sharpness
};

AnalyticPhantom make_analytic(const PhantomSpec& s) {
  if (s.name == "flag") return flag_phantom(deg2rad(s.theta_deg));
  if (s.name == "constant") return constant_phantom(s.value);
  if (s.name == "gaussian") return gaussian_bump(s.a);
  throw std::invalid_argument("phantom '" + s.name + "' has no analytic form");
}

PixelPhantom make_raster(const PhantomSpec& s, int n) {
  if (s.name == "shepp-logan") return shepp_logan(n);
  return rasterize(make_analytic(s), n);
}

bool is_analytic(const std::string& name) {
  return name == "flag" || name == "constant" || name == "gaussian";
}

void check_phantom_name(const std::string& name) {
  if (!is_analytic(name) && name != "shepp-logan")
    throw std::invalid_argument("unknown phantom '" + name +
                                "' (flag, shepp-logan, constant, gaussian)");
}

json phantom_meta(const PhantomSpec& s) {
  json j{{"phantom", s.name}};
  if (is_analytic(s.name)) j["theta_deg"] = s.theta_deg;
  if (s.name == "constant") j["value"] = s.value;
  if (s.name == "gaussian") j["a"] = s.a;
  return j;
}

double parse_p(const std::string& s) {
  if (s == "1") return 1.0;
  if (s == "2") return 2.0;
  if (s == "inf") return std::numeric_limits<double>::infinity();
  throw std::invalid_argument("p must be 1, 2, or inf");
}

json p_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

void emit_report(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw IoError("cannot open for writing: " + out_path);
    f << text;
  }
}

void add_phantom_flags(CLI::App* cmd, PhantomSpec& spec, std::string& config_path,
                       std::vector<std::pair<const CLI::Option*, const char*>>& keys,
                       const char* name_key = "name") {
  keys.emplace_back(cmd->add_option(std::string("--") + name_key, spec.name,
                                    "flag | shepp-logan | constant | gaussian"),
                    name_key);
  keys.emplace_back(cmd->add_option("--theta,--theta-deg", spec.theta_deg, "rotation in degrees"),
                    "theta");
  keys.emplace_back(cmd->add_option("--value", spec.value, "constant phantom level"), "value");
  keys.emplace_back(cmd->add_option("--a", spec.a, "gaussian sharpness"), "a");
  cmd->add_option("--config", config_path, "JSON config file; flags override its fields");
}

void fill_phantom_flags(const json& cfg, const PhantomSpec& defaults, PhantomSpec& spec,
                        std::vector<std::pair<const CLI::Option*, const char*>>& keys) {
  (void)defaults;
  for (auto& [opt, key] : keys) {
    std::string k = key;
    if (k == "name" || k == "reference-name")
      cfg_fill(cfg, opt, key, spec.name);
    else if (k == "theta" || k == "reference-theta")
      cfg_fill(cfg, opt, key, spec.theta_deg);
    else if (k == "value")
      cfg_fill(cfg, opt, key, spec.value);
    else if (k == "a")
      cfg_fill(cfg, opt, key, spec.a);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"X-ray tomography on the flat torus: forward models, sampling, "
               "Fourier reconstruction, error analysis"};
  app.require_subcommand(1);

  // ---- phantom ----
  auto* cmd_ph = app.add_subcommand("phantom", "rasterize a phantom to PGM (+ sidecar) and CSV");
  PhantomSpec ph_spec;
  std::string ph_config, ph_out, ph_csv;
  int ph_n = 512;
  std::vector<std::pair<const CLI::Option*, const char*>> ph_keys;
  add_phantom_flags(cmd_ph, ph_spec, ph_config, ph_keys);
  auto* ph_n_opt = cmd_ph->add_option("--n", ph_n, "raster size");
  auto* ph_out_opt = cmd_ph->add_option("--out", ph_out, "output PGM path");
  auto* ph_csv_opt = cmd_ph->add_option("--csv", ph_csv, "also write a flat CSV");

  // ---- forward ----
  auto* cmd_fw = app.add_subcommand("forward", "sample the X-ray transform over a direction set");
  PhantomSpec fw_spec;
  std::string fw_config, fw_model, fw_rule = "left", fw_sino, fw_out;
  int fw_n = 512, fw_r = 0, fw_nd = 128, fw_max_panels = 200000;
  double fw_sigma = 0.0, fw_tol = 1e-9;
  std::uint64_t fw_seed = 1;
  bool fw_alias = false;
  std::vector<std::pair<const CLI::Option*, const char*>> fw_keys;
  add_phantom_flags(cmd_fw, fw_spec, fw_config, fw_keys, "phantom");
  auto* fw_model_opt = cmd_fw->add_option("--model", fw_model, "A1 | A2 | AT2");
  auto* fw_n_opt = cmd_fw->add_option("--n", fw_n, "raster size for A1");
  auto* fw_r_opt = cmd_fw->add_option("--r", fw_r, "direction set radius");
  auto* fw_nd_opt = cmd_fw->add_option("--n-d", fw_nd, "samples per direction");
  auto* fw_rule_opt = cmd_fw->add_option("--rule", fw_rule, "left | mid");
  auto* fw_sigma_opt = cmd_fw->add_option("--sigma", fw_sigma, "noise standard deviation");
  auto* fw_seed_opt = cmd_fw->add_option("--seed", fw_seed, "noise seed");
  auto* fw_tol_opt = cmd_fw->add_option("--tol", fw_tol, "A2 quadrature tolerance");
  auto* fw_mp_opt = cmd_fw->add_option("--max-panels", fw_max_panels, "A2 panel budget");
  auto* fw_sino_opt = cmd_fw->add_option("--sinogram", fw_sino, "AT2 input sinogram CSV");
  auto* fw_alias_opt = cmd_fw->add_flag("--allow-aliasing", fw_alias,
                                        "permit n_d below the alias-free band 2r+1");
  auto* fw_out_opt = cmd_fw->add_option("--out", fw_out, "output samples CSV");

  // ---- radon ----
  auto* cmd_rd = app.add_subcommand("radon", "parallel-beam sinogram at direction-set angles");
  PhantomSpec rd_spec;
  std::string rd_config, rd_out;
  int rd_n = 512, rd_r = 0, rd_M = 729;
  std::vector<std::pair<const CLI::Option*, const char*>> rd_keys;
  add_phantom_flags(cmd_rd, rd_spec, rd_config, rd_keys, "phantom");
  auto* rd_n_opt = cmd_rd->add_option("--n", rd_n, "raster size");
  auto* rd_r_opt = cmd_rd->add_option("--r", rd_r, "direction set radius for the angle list");
  auto* rd_M_opt = cmd_rd->add_option("--M", rd_M, "rays per angle");
  auto* rd_out_opt = cmd_rd->add_option("--out", rd_out, "output sinogram CSV");

  // ---- reconstruct ----
  auto* cmd_rc = app.add_subcommand("reconstruct", "Fourier coefficients from samples, "
                                                   "optional Tikhonov filter and image");
  std::string rc_config, rc_data, rc_out, rc_image;
  double rc_r = 0, rc_alpha = 0, rc_s = 0;
  int rc_neval = 256;
  bool rc_complex = false, rc_alias = false;
  auto* rc_data_opt = cmd_rc->add_option("--data", rc_data, "input samples CSV");
  auto* rc_r_opt = cmd_rc->add_option("--r", rc_r, "coefficient ball radius");
  auto* rc_alpha_opt = cmd_rc->add_option("--alpha", rc_alpha, "filter strength");
  auto* rc_s_opt = cmd_rc->add_option("--s", rc_s, "filter smoothness exponent");
  auto* rc_cx_opt = cmd_rc->add_flag("--complex", rc_complex,
                                     "skip the real-phantom conjugate symmetrization");
  auto* rc_alias_opt = cmd_rc->add_flag("--allow-aliasing", rc_alias, "permit aliased bins");
  auto* rc_out_opt = cmd_rc->add_option("--out", rc_out, "output table CSV");
  auto* rc_img_opt = cmd_rc->add_option("--image", rc_image, "optional evaluation PGM");
  auto* rc_ne_opt = cmd_rc->add_option("--n-eval", rc_neval, "evaluation grid size");
  cmd_rc->add_option("--config", rc_config, "JSON config file; flags override its fields");

  // ---- metrics ----
  auto* cmd_mt = app.add_subcommand("metrics", "reconstruction or cutoff error reports");
  PhantomSpec mt_spec;
  std::string mt_config, mt_metric, mt_table, mt_p = "2", mt_mask = "none", mt_out;
  int mt_n = 256;
  double mt_r = 50, mt_alpha = std::numeric_limits<double>::quiet_NaN();
  double mt_s = std::numeric_limits<double>::quiet_NaN();
  double mt_sigma = std::numeric_limits<double>::quiet_NaN();
  std::int64_t mt_seed = -1;
  std::vector<std::pair<const CLI::Option*, const char*>> mt_keys;
  auto* mt_metric_opt = cmd_mt->add_option("--metric", mt_metric, "recon | cutoff");
  auto* mt_table_opt = cmd_mt->add_option("--table", mt_table, "reconstruction table CSV");
  mt_keys.emplace_back(cmd_mt->add_option("--reference-name", mt_spec.name,
                                          "reference phantom for recon"),
                       "reference-name");
  mt_keys.emplace_back(cmd_mt->add_option("--reference-theta,--reference-theta-deg", mt_spec.theta_deg,
                                          "reference rotation in degrees"),
                       "reference-theta");
  mt_keys.emplace_back(cmd_mt->add_option("--value", mt_spec.value, "constant phantom level"),
                       "value");
  mt_keys.emplace_back(cmd_mt->add_option("--a", mt_spec.a, "gaussian sharpness"), "a");
  auto* mt_n_opt = cmd_mt->add_option("--n", mt_n, "grid size");
  auto* mt_p_opt = cmd_mt->add_option("--p", mt_p, "1 | 2 | inf");
  auto* mt_mask_opt = cmd_mt->add_option("--mask", mt_mask, "none | support");
  auto* mt_r_opt = cmd_mt->add_option("--r", mt_r, "cutoff ball radius");
  auto* mt_alpha_opt = cmd_mt->add_option("--alpha", mt_alpha, "echoed filter strength");
  auto* mt_s_opt = cmd_mt->add_option("--s", mt_s, "echoed filter exponent");
  auto* mt_sigma_opt = cmd_mt->add_option("--sigma", mt_sigma, "echoed noise level");
  auto* mt_seed_opt = cmd_mt->add_option("--seed", mt_seed, "echoed noise seed");
  auto* mt_out_opt = cmd_mt->add_option("--out", mt_out, "also write the JSON report here");
  cmd_mt->add_option("--config", mt_config, "JSON config file; flags override its fields");

  // ---- bound ----
  auto* cmd_bd = app.add_subcommand("bound", "regularization strategy bound / randomized check");
  std::string bd_config, bd_out;
  double bd_alpha = 0.1, bd_s = 1, bd_delta = 1, bd_t = 0, bd_eps = 0, bd_fnorm = 1, bd_r = 0;
  int bd_trials = 100;
  std::uint64_t bd_seed = 1;
  bool bd_verify = false;
  auto* bd_alpha_opt = cmd_bd->add_option("--alpha", bd_alpha, "filter strength");
  auto* bd_s_opt = cmd_bd->add_option("--s", bd_s, "penalty smoothness");
  auto* bd_delta_opt = cmd_bd->add_option("--delta", bd_delta, "extra smoothness of the truth");
  auto* bd_eps_opt = cmd_bd->add_option("--eps", bd_eps, "data noise size");
  auto* bd_fnorm_opt = cmd_bd->add_option("--fnorm", bd_fnorm, "norm of the truth");
  auto* bd_verify_opt = cmd_bd->add_flag("--verify", bd_verify, "run the randomized check");
  auto* bd_trials_opt = cmd_bd->add_option("--trials", bd_trials, "number of random trials");
  auto* bd_r_opt = cmd_bd->add_option("--r", bd_r, "data smoothness index");
  auto* bd_t_opt = cmd_bd->add_option("--t", bd_t, "error norm index");
  auto* bd_seed_opt = cmd_bd->add_option("--seed", bd_seed, "trial seed");
  auto* bd_out_opt = cmd_bd->add_option("--out", bd_out, "also write the JSON report here");
  cmd_bd->add_option("--config", bd_config, "JSON config file; flags override its fields");

  // ---- directions ----
  auto* cmd_dr = app.add_subcommand("directions", "canonical direction set listing");
  std::string dr_config, dr_out, dr_angles;
  int dr_r = 0;
  bool dr_count = false;
  auto* dr_r_opt = cmd_dr->add_option("--r", dr_r, "direction set radius");
  auto* dr_count_opt = cmd_dr->add_flag("--count", dr_count, "print only the cardinality");
  auto* dr_out_opt = cmd_dr->add_option("--out", dr_out, "write the CSV here");
  auto* dr_ang_opt = cmd_dr->add_option("--angles", dr_angles, "write a JSON angle report here");
  cmd_dr->add_option("--config", dr_config, "JSON config file; flags override its fields");

  // ---- rotate-average ----
  auto* cmd_ra = app.add_subcommand("rotate-average",
                                    "average reconstructions back-rotated to a common frame");
  PhantomSpec ra_spec;
  std::string ra_config, ra_out, ra_p = "2", ra_mask = "none";
  std::vector<std::string> ra_tables;
  std::vector<double> ra_thetas;
  int ra_n = 256;
  bool ra_have_ref = false;
  std::vector<std::pair<const CLI::Option*, const char*>> ra_keys;
  auto* ra_tables_opt = cmd_ra->add_option("--tables", ra_tables, "table CSV per rotation");
  auto* ra_thetas_opt = cmd_ra->add_option("--thetas-deg", ra_thetas,
                                           "rotation of each table, degrees");
  auto* ra_n_opt = cmd_ra->add_option("--n", ra_n, "grid size");
  auto* ra_out_opt = cmd_ra->add_option("--out", ra_out, "output PGM");
  auto* ra_ref_opt = cmd_ra->add_option("--reference-name", ra_spec.name,
                                        "optional reference phantom for an error report");
  ra_keys.emplace_back(ra_ref_opt, "reference-name");
  ra_keys.emplace_back(cmd_ra->add_option("--reference-theta,--reference-theta-deg", ra_spec.theta_deg,
                                          "reference rotation in degrees"),
                       "reference-theta");
  auto* ra_p_opt = cmd_ra->add_option("--p", ra_p, "1 | 2 | inf");
  auto* ra_mask_opt = cmd_ra->add_option("--mask", ra_mask, "none | support");
  cmd_ra->add_option("--config", ra_config, "JSON config file; flags override its fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 1;
  }

  if (cmd_ph->parsed()) {
    json cfg = load_config(ph_config);
    fill_phantom_flags(cfg, {}, ph_spec, ph_keys);
    cfg_fill(cfg, ph_n_opt, "n", ph_n);
    cfg_fill(cfg, ph_out_opt, "out", ph_out);
    cfg_fill(cfg, ph_csv_opt, "csv", ph_csv);
    check_phantom_name(ph_spec.name);
    if (ph_out.empty()) throw std::invalid_argument("phantom: --out is required");
    PixelPhantom p = make_raster(ph_spec, ph_n);
    write_pgm16(ph_out, p, phantom_meta(ph_spec).dump());
    if (!ph_csv.empty()) write_raster_csv(ph_csv, p);
    return 0;
  }

  if (cmd_fw->parsed()) {
    json cfg = load_config(fw_config);
    fill_phantom_flags(cfg, {}, fw_spec, fw_keys);
    cfg_fill(cfg, fw_model_opt, "model", fw_model);
    cfg_fill(cfg, fw_n_opt, "n", fw_n);
    cfg_fill(cfg, fw_r_opt, "r", fw_r);
    cfg_fill(cfg, fw_nd_opt, "n-d", fw_nd);
    cfg_fill(cfg, fw_rule_opt, "rule", fw_rule);
    cfg_fill(cfg, fw_sigma_opt, "sigma", fw_sigma);
    cfg_fill(cfg, fw_seed_opt, "seed", fw_seed);
    cfg_fill(cfg, fw_tol_opt, "tol", fw_tol);
    cfg_fill(cfg, fw_mp_opt, "max-panels", fw_max_panels);
    cfg_fill(cfg, fw_sino_opt, "sinogram", fw_sino);
    cfg_fill(cfg, fw_alias_opt, "allow-aliasing", fw_alias);
    cfg_fill(cfg, fw_out_opt, "out", fw_out);
    if (fw_out.empty()) throw std::invalid_argument("forward: --out is required");
    if (fw_r < 1) throw std::invalid_argument("forward: --r must be >= 1");
    Rule rule;
    if (fw_rule == "left")
      rule = Rule::Left;
    else if (fw_rule == "mid")
      rule = Rule::Mid;
    else
      throw std::invalid_argument("forward: --rule must be left or mid");
    if (!fw_alias && fw_nd < 2 * fw_r + 1)
      throw std::invalid_argument(
          "forward: n_d = " + std::to_string(fw_nd) + " aliases coefficients up to r = " +
          std::to_string(fw_r) + " (need n_d >= " + std::to_string(2 * fw_r + 1) +
          "); pass --allow-aliasing to override");
    DirectionSet dirs = direction_set(fw_r);
    GeodesicSamples data;
    if (fw_model == "A1") {
      check_phantom_name(fw_spec.name);
      data = acquire(make_raster(fw_spec, fw_n), dirs, fw_nd, rule);
    } else if (fw_model == "A2") {
      data = acquire(make_analytic(fw_spec), dirs, fw_nd, rule,
                     QuadratureOptions{fw_tol, fw_max_panels});
    } else if (fw_model == "AT2") {
      if (fw_sino.empty()) throw std::invalid_argument("forward: AT2 needs --sinogram");
      data = acquire(read_sinogram_csv(fw_sino), dirs, fw_nd, rule);
    } else {
      throw std::invalid_argument("forward: --model must be A1, A2, or AT2");
    }
    if (fw_sigma > 0.0) data = add_noise(data, NoiseSpec{fw_sigma, fw_seed});
    write_samples_csv(fw_out, data);
    return 0;
  }

  if (cmd_rd->parsed()) {
    json cfg = load_config(rd_config);
    fill_phantom_flags(cfg, {}, rd_spec, rd_keys);
    cfg_fill(cfg, rd_n_opt, "n", rd_n);
    cfg_fill(cfg, rd_r_opt, "r", rd_r);
    cfg_fill(cfg, rd_M_opt, "M", rd_M);
    cfg_fill(cfg, rd_out_opt, "out", rd_out);
    check_phantom_name(rd_spec.name);
    if (rd_out.empty()) throw std::invalid_argument("radon: --out is required");
    if (rd_r < 1) throw std::invalid_argument("radon: --r must be >= 1");
    DirectionSet dirs = direction_set(rd_r);
    std::vector<double> angles;
    angles.reserve(dirs.members.size());
    for (auto v : dirs.members) angles.push_back(direction_angle(as_int(v)));
    write_sinogram_csv(rd_out, radon_simulate(make_raster(rd_spec, rd_n), angles, rd_M));
    return 0;
  }

  if (cmd_rc->parsed()) {
    json cfg = load_config(rc_config);
    cfg_fill(cfg, rc_data_opt, "data", rc_data);
    cfg_fill(cfg, rc_r_opt, "r", rc_r);
    cfg_fill(cfg, rc_alpha_opt, "alpha", rc_alpha);
    cfg_fill(cfg, rc_s_opt, "s", rc_s);
    cfg_fill(cfg, rc_cx_opt, "complex", rc_complex);
    cfg_fill(cfg, rc_alias_opt, "allow-aliasing", rc_alias);
    cfg_fill(cfg, rc_out_opt, "out", rc_out);
    cfg_fill(cfg, rc_img_opt, "image", rc_image);
    cfg_fill(cfg, rc_ne_opt, "n-eval", rc_neval);
    if (rc_data.empty()) throw std::invalid_argument("reconstruct: --data is required");
    if (rc_out.empty()) throw std::invalid_argument("reconstruct: --out is required");
    GeodesicSamples data = read_samples_csv(rc_data);
    FourierTable t = reconstruct_table(data, rc_r, !rc_complex, rc_alias);
    t = tikhonov_filter(t, rc_alpha, rc_s);
    write_table_csv(rc_out, t);
    if (!rc_image.empty()) {
      json meta{{"alpha", rc_alpha}, {"s", rc_s}, {"r", rc_r}};
      write_pgm16(rc_image, evaluate_series_grid(t, rc_neval), meta.dump());
    }
    return 0;
  }

  if (cmd_mt->parsed()) {
    json cfg = load_config(mt_config);
    fill_phantom_flags(cfg, {}, mt_spec, mt_keys);
    cfg_fill(cfg, mt_metric_opt, "metric", mt_metric);
    cfg_fill(cfg, mt_table_opt, "table", mt_table);
    cfg_fill(cfg, mt_n_opt, "n", mt_n);
    cfg_fill(cfg, mt_p_opt, "p", mt_p);
    cfg_fill(cfg, mt_mask_opt, "mask", mt_mask);
    cfg_fill(cfg, mt_r_opt, "r", mt_r);
    cfg_fill(cfg, mt_alpha_opt, "alpha", mt_alpha);
    cfg_fill(cfg, mt_s_opt, "s", mt_s);
    cfg_fill(cfg, mt_sigma_opt, "sigma", mt_sigma);
    cfg_fill(cfg, mt_seed_opt, "seed", mt_seed);
    cfg_fill(cfg, mt_out_opt, "out", mt_out);
    check_phantom_name(mt_spec.name);
    json params;
    params["alpha"] = std::isnan(mt_alpha) ? json(nullptr) : json(mt_alpha);
    params["s"] = std::isnan(mt_s) ? json(nullptr) : json(mt_s);
    params["sigma"] = std::isnan(mt_sigma) ? json(nullptr) : json(mt_sigma);
    params["seed"] = mt_seed < 0 ? json(nullptr) : json(mt_seed);
    if (mt_metric == "recon") {
      if (mt_table.empty()) throw std::invalid_argument("metrics: --table is required");
      FourierTable t = read_table_csv(mt_table);
      PixelPhantom ref = make_raster(mt_spec, mt_n);
      double p = parse_p(mt_p);
      std::vector<std::uint8_t> mask;
      const std::vector<std::uint8_t>* mp = nullptr;
      if (mt_mask == "support") {
        mask = support_mask(ref);
        mp = &mask;
      } else if (mt_mask != "none") {
        throw std::invalid_argument("metrics: --mask must be none or support");
      }
      ErrorReport rep = recon_error(ref, t, p, mt_n, mp);
      params["r"] = t.radius;
      emit_report(json{{"metric", rep.metric},
                       {"p", p_json(rep.p)},
                       {"value", rep.value},
                       {"grid", rep.grid},
                       {"mask", rep.masked},
                       {"params", params}},
                  mt_out);
    } else if (mt_metric == "cutoff") {
      PixelPhantom p = make_raster(mt_spec, mt_n);
      double val = cutoff_error(p, mt_r);
      params["r"] = mt_r;
      emit_report(json{{"metric", "cutoff_error"},
                       {"p", nullptr},
                       {"value", val},
                       {"grid", mt_n},
                       {"mask", false},
                       {"params", params}},
                  mt_out);
    } else {
      throw std::invalid_argument("metrics: --metric must be recon or cutoff");
    }
    return 0;
  }

  if (cmd_bd->parsed()) {
    json cfg = load_config(bd_config);
    cfg_fill(cfg, bd_alpha_opt, "alpha", bd_alpha);
    cfg_fill(cfg, bd_s_opt, "s", bd_s);
    cfg_fill(cfg, bd_delta_opt, "delta", bd_delta);
    cfg_fill(cfg, bd_eps_opt, "eps", bd_eps);
    cfg_fill(cfg, bd_fnorm_opt, "fnorm", bd_fnorm);
    cfg_fill(cfg, bd_verify_opt, "verify", bd_verify);
    cfg_fill(cfg, bd_trials_opt, "trials", bd_trials);
    cfg_fill(cfg, bd_r_opt, "r", bd_r);
    cfg_fill(cfg, bd_t_opt, "t", bd_t);
    cfg_fill(cfg, bd_seed_opt, "seed", bd_seed);
    cfg_fill(cfg, bd_out_opt, "out", bd_out);
    if (bd_verify) {
      StrategyReport rep = verify_strategy(bd_trials, bd_r, bd_s, bd_delta, bd_t, bd_eps, bd_seed);
      emit_report(json{{"trials", rep.trials},
                       {"passes", rep.passes},
                       {"worst_margin", rep.worst_margin},
                       {"params",
                        {{"r", rep.r},
                         {"s", rep.s},
                         {"delta", rep.delta},
                         {"t", rep.t},
                         {"eps", rep.eps},
                         {"alpha", rep.alpha},
                         {"median_error", rep.median_error},
                         {"seed", rep.seed}}}},
                  bd_out);
    } else {
      double val = strategy_bound(bd_alpha, bd_s, bd_delta, bd_eps, bd_fnorm);
      emit_report(json{{"metric", "strategy_bound"},
                       {"value", val},
                       {"params",
                        {{"alpha", bd_alpha},
                         {"s", bd_s},
                         {"delta", bd_delta},
                         {"eps", bd_eps},
                         {"fnorm", bd_fnorm}}}},
                  bd_out);
    }
    return 0;
  }

  if (cmd_dr->parsed()) {
    json cfg = load_config(dr_config);
    cfg_fill(cfg, dr_r_opt, "r", dr_r);
    cfg_fill(cfg, dr_count_opt, "count", dr_count);
    cfg_fill(cfg, dr_out_opt, "out", dr_out);
    cfg_fill(cfg, dr_ang_opt, "angles", dr_angles);
    if (dr_r < 1) throw std::invalid_argument("directions: --r must be >= 1");
    DirectionSet s = direction_set(dr_r);
    if (dr_count) std::cout << s.members.size() << "\n";
    if (!dr_out.empty()) write_directions_csv(dr_out, s);
    if (!dr_angles.empty()) {
      json angles = json::array();
      for (auto d : s.members)
        angles.push_back(json{{"a", d.a}, {"b", d.b}, {"angle_rad", direction_angle(as_int(d))}});
      json rep{{"r", dr_r}, {"count", s.members.size()}, {"angles", angles}};
      std::ofstream f(dr_angles);
      if (!f) throw IoError("cannot open for writing: " + dr_angles);
      f << rep.dump(2) << "\n";
    }
    if (!dr_count && dr_out.empty() && dr_angles.empty()) {
      std::cout << "a,b\n";
      for (auto d : s.members) std::cout << d.a << "," << d.b << "\n";
    }
    return 0;
  }

  if (cmd_ra->parsed()) {
    json cfg = load_config(ra_config);
    fill_phantom_flags(cfg, {}, ra_spec, ra_keys);
    cfg_fill(cfg, ra_tables_opt, "tables", ra_tables);
    cfg_fill(cfg, ra_thetas_opt, "thetas-deg", ra_thetas);
    cfg_fill(cfg, ra_n_opt, "n", ra_n);
    cfg_fill(cfg, ra_out_opt, "out", ra_out);
    cfg_fill(cfg, ra_p_opt, "p", ra_p);
    cfg_fill(cfg, ra_mask_opt, "mask", ra_mask);
    ra_have_ref = ra_ref_opt->count() > 0 || cfg.contains("reference-name");
    if (ra_out.empty()) throw std::invalid_argument("rotate-average: --out is required");
    if (ra_tables.empty() || ra_tables.size() != ra_thetas.size())
      throw std::invalid_argument("rotate-average: --tables and --thetas-deg must match");
    std::vector<std::pair<FourierTable, double>> recs;
    recs.reserve(ra_tables.size());
    for (std::size_t i = 0; i < ra_tables.size(); ++i)
      recs.emplace_back(read_table_csv(ra_tables[i]), deg2rad(ra_thetas[i]));
    PixelPhantom avg = rotation_average(recs, ra_n);
    write_pgm16(ra_out, avg, json{{"count", ra_tables.size()}}.dump());
    if (ra_have_ref) {
      check_phantom_name(ra_spec.name);
      PixelPhantom ref = make_raster(ra_spec, ra_n);
      double p = parse_p(ra_p);
      std::vector<std::uint8_t> mask;
      const std::vector<std::uint8_t>* mp = nullptr;
      if (ra_mask == "support") {
        mask = support_mask(ref);
        mp = &mask;
      } else if (ra_mask != "none") {
        throw std::invalid_argument("rotate-average: --mask must be none or support");
      }
      ErrorReport rep = grid_error(ref, avg, p, mp);
      emit_report(json{{"metric", rep.metric},
                       {"p", p_json(rep.p)},
                       {"value", rep.value},
                       {"grid", rep.grid},
                       {"mask", rep.masked},
                       {"params", json{{"count", ra_tables.size()}}}},
                  "");
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
