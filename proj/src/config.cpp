#include "qwave/config.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace qwave {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

double need_num(const json& v, const std::string& key) {
  if (!v.is_number()) bad("config key '" + key + "' must be a number");
  return v.get<double>();
}

int need_int(const json& v, const std::string& key) {
  if (v.is_number_integer() || v.is_number_unsigned()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    const int i = int(d);
    if (double(i) == d) return i;
  }
  bad("config key '" + key + "' must be an integer");
}

bool need_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) bad("config key '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string need_str(const json& v, const std::string& key) {
  if (!v.is_string()) bad("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> need_vecd(const json& v, const std::string& key) {
  if (!v.is_array()) bad("config key '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(need_num(e, key));
  return out;
}

void check_choice(const std::string& val, std::initializer_list<const char*> allowed,
                  const std::string& key) {
  for (const char* a : allowed)
    if (val == a) return;
  bad("config key '" + key + "' has unsupported value '" + val + "'");
}

}  // namespace

nlohmann::ordered_json config_echo(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["mode"] = c.mode;
  j["box.side"] = c.box_side;
  j["box.n"] = c.box_n;
  j["wavelet.name"] = c.wavelet_name;
  j["wavelet.k0"] = c.wavelet_k0;
  j["normalization"] = c.normalization;
  j["grid.lambda0"] = c.lambda0;
  j["grid.L"] = c.L;
  j["grid.t_max"] = c.t_max;
  j["grid.beta0"] = c.beta0;
  j["grid.beta1"] = c.beta1;
  j["grid.m_range"] = c.m_range;
  j["grid.scale_mode"] = c.scale_mode;
  j["grid.eta"] = c.eta;
  j["grid.lambda01"] = c.lambda01;
  j["grid.lambda02"] = c.lambda02;
  j["grid.L1"] = c.L1;
  j["grid.L2"] = c.L2;
  j["grid.j_max"] = c.j_max;
  j["grid.beta2"] = c.beta2;
  j["grid.beta3"] = c.beta3;
  j["band.lo"] = c.band_lo;
  j["band.hi"] = c.band_hi;
  j["bounds.r_min"] = c.r_min;
  j["bounds.r_max"] = c.r_max;
  j["bounds.n_radial"] = c.n_radial;
  j["bounds.n_angular"] = c.n_angular;
  j["bounds.max_rounds"] = c.max_rounds;
  j["bounds.rel_tol"] = c.rel_tol;
  j["bounds.e_summand"] = c.e_summand;
  j["bounds.shell_rel_stop"] = c.shell_rel_stop;
  j["bounds.max_shell"] = c.max_shell;
  j["bounds.pair_slack"] = c.pair_slack;
  j["bounds.dense_limit"] = c.dense_limit;
  j["bounds.require_frame"] = c.require_frame;
  j["sweep.betas"] = c.sweep_betas;
  j["sweep.box_scale"] = c.box_scale;
  j["analysis.translation_mode"] = c.translation_mode;
  j["reconstruct.iters"] = c.reconstruct_iters;
  j["reconstruct.tol"] = c.reconstruct_tol;
  j["reconstruct.method"] = c.reconstruct_method;
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  // the output directory is invocation plumbing, not a study parameter; leaving
  // it out keeps artifacts byte-identical across output locations
  j["input"] = c.input;
  return j;
}

ExperimentConfig parse_config(const nlohmann::json& flat) {
  if (!flat.is_object()) bad("config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, v] : flat.items()) {
    if (key == "mode") c.mode = need_str(v, key);
    else if (key == "box.side") c.box_side = need_num(v, key);
    else if (key == "box.n") c.box_n = need_int(v, key);
    else if (key == "wavelet.name") c.wavelet_name = need_str(v, key);
    else if (key == "wavelet.k0") c.wavelet_k0 = need_num(v, key);
    else if (key == "normalization") c.normalization = need_str(v, key);
    else if (key == "grid.lambda0") c.lambda0 = need_num(v, key);
    else if (key == "grid.L") c.L = need_int(v, key);
    else if (key == "grid.t_max") c.t_max = need_int(v, key);
    else if (key == "grid.beta") {
      const double b = need_num(v, key);
      c.beta0 = c.beta1 = c.beta2 = c.beta3 = b;
    }
    else if (key == "grid.beta0") c.beta0 = need_num(v, key);
    else if (key == "grid.beta1") c.beta1 = need_num(v, key);
    else if (key == "grid.m_range") c.m_range = need_int(v, key);
    else if (key == "grid.scale_mode") c.scale_mode = need_str(v, key);
    else if (key == "grid.eta") c.eta = need_num(v, key);
    else if (key == "grid.lambda01") c.lambda01 = need_num(v, key);
    else if (key == "grid.lambda02") c.lambda02 = need_num(v, key);
    else if (key == "grid.L1") c.L1 = need_int(v, key);
    else if (key == "grid.L2") c.L2 = need_int(v, key);
    else if (key == "grid.j_max") c.j_max = need_int(v, key);
    else if (key == "grid.beta2") c.beta2 = need_num(v, key);
    else if (key == "grid.beta3") c.beta3 = need_num(v, key);
    else if (key == "band.lo") c.band_lo = need_num(v, key);
    else if (key == "band.hi") c.band_hi = need_num(v, key);
    else if (key == "bounds.r_min") c.r_min = need_num(v, key);
    else if (key == "bounds.r_max") c.r_max = need_num(v, key);
    else if (key == "bounds.n_radial") c.n_radial = need_int(v, key);
    else if (key == "bounds.n_angular") c.n_angular = need_int(v, key);
    else if (key == "bounds.max_rounds") c.max_rounds = need_int(v, key);
    else if (key == "bounds.rel_tol") c.rel_tol = need_num(v, key);
    else if (key == "bounds.e_summand") c.e_summand = need_str(v, key);
    else if (key == "bounds.shell_rel_stop") c.shell_rel_stop = need_num(v, key);
    else if (key == "bounds.max_shell") c.max_shell = need_int(v, key);
    else if (key == "bounds.pair_slack") c.pair_slack = need_num(v, key);
    else if (key == "bounds.dense_limit") c.dense_limit = need_int(v, key);
    else if (key == "bounds.require_frame") c.require_frame = need_bool(v, key);
    else if (key == "sweep.betas") c.sweep_betas = need_vecd(v, key);
    else if (key == "sweep.box_scale") c.box_scale = need_str(v, key);
    else if (key == "analysis.translation_mode") c.translation_mode = need_str(v, key);
    else if (key == "reconstruct.iters") c.reconstruct_iters = need_int(v, key);
    else if (key == "reconstruct.tol") c.reconstruct_tol = need_num(v, key);
    else if (key == "reconstruct.method") c.reconstruct_method = need_str(v, key);
    else if (key == "threads") c.threads = need_int(v, key);
    else if (key == "seed") c.seed = unsigned(need_int(v, key));
    else if (key == "out") c.out = need_str(v, key);
    else if (key == "input") c.input = need_str(v, key);
    else bad("unknown config key: " + key);
  }
  check_choice(c.mode, {"2d", "4d"}, "mode");
  check_choice(c.wavelet_name, {"log", "morlet", "gaussian"}, "wavelet.name");
  check_choice(c.normalization, {"l1", "l2"}, "normalization");
  check_choice(c.scale_mode, {"ring", "base"}, "grid.scale_mode");
  check_choice(c.e_summand, {"sqrt", "product"}, "bounds.e_summand");
  check_choice(c.box_scale, {"matched", "fixed"}, "sweep.box_scale");
  check_choice(c.translation_mode, {"exact", "snap"}, "analysis.translation_mode");
  check_choice(c.reconstruct_method, {"cg", "richardson"}, "reconstruct.method");
  if (c.box_n < 1) bad("config key 'box.n' must be positive");
  if (c.box_side <= 0) bad("config key 'box.side' must be positive");
  if (c.threads < 1) bad("config key 'threads' must be positive");
  if (c.reconstruct_iters < 1) bad("config key 'reconstruct.iters' must be positive");
  if (c.dense_limit < 0) bad("config key 'bounds.dense_limit' must be nonnegative");
  return c;
}

nlohmann::json load_config_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) bad("cannot read config file: " + path);
  json flat;
  try {
    is >> flat;
  } catch (const json::parse_error& e) {
    bad("config file is not valid JSON: " + path + " (" + e.what() + ")");
  }
  if (!flat.is_object()) bad("config must be a JSON object");
  return flat;
}

ExperimentConfig load_config_file(const std::string& path) {
  return parse_config(load_config_json(path));
}

void apply_override(nlohmann::json& flat, const std::string& keyval) {
  const std::size_t eq = keyval.find('=');
  if (eq == std::string::npos || eq == 0)
    bad("override must look like key=value: " + keyval);
  const std::string key = keyval.substr(0, eq);
  const std::string val = keyval.substr(eq + 1);
  json parsed = json::parse(val, nullptr, false);
  if (parsed.is_discarded()) parsed = val;  // bare words are strings
  flat[key] = parsed;
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string dump = config_echo(cfg).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MotherWavelet cfg_wavelet(const ExperimentConfig& c) {
  const int dim = c.mode == "2d" ? 2 : 4;
  if (c.wavelet_name == "log") return laplacian_gaussian(dim);
  if (c.wavelet_name == "morlet") return morlet(dim, c.wavelet_k0);
  return gaussian_bump(dim);
}

BoxSpec cfg_box(const ExperimentConfig& c) {
  BoxSpec b;
  b.dim = c.mode == "2d" ? 2 : 4;
  for (int ax = 0; ax < 4; ++ax) {
    b.side[ax] = ax < b.dim ? c.box_side : 0.0;
    b.n[ax] = ax < b.dim ? c.box_n : 1;
  }
  return b;
}

GridSpec2D cfg_grid2d(const ExperimentConfig& c) {
  GridSpec2D g;
  g.lambda0 = c.lambda0;
  g.L = c.L;
  g.t_max = c.t_max;
  g.beta0 = c.beta0;
  g.beta1 = c.beta1;
  g.m_range = c.m_range;
  g.scale_mode = c.scale_mode == "ring" ? ScaleMode::ring : ScaleMode::base;
  return g;
}

GridSpec4D cfg_grid4d(const ExperimentConfig& c) {
  GridSpec4D g;
  g.lambda01 = c.lambda01;
  g.lambda02 = c.lambda02;
  g.L1 = c.L1;
  g.L2 = c.L2;
  g.t_max = c.t_max;
  g.j_max = c.j_max;
  g.beta0 = c.beta0;
  g.beta1 = c.beta1;
  g.beta2 = c.beta2;
  g.beta3 = c.beta3;
  g.m_range = c.m_range;
  g.scale_mode = c.scale_mode == "ring" ? ScaleMode::ring : ScaleMode::base;
  return g;
}

AnalysisOptions cfg_analysis(const ExperimentConfig& c) {
  AnalysisOptions a;
  a.norm = c.normalization == "l1" ? Normalization::l1 : Normalization::l2;
  a.translation_mode =
      c.translation_mode == "exact" ? TranslationMode::exact : TranslationMode::snap;
  a.threads = c.threads;
  return a;
}

BoundsOptions cfg_bounds(const ExperimentConfig& c) {
  BoundsOptions b;
  b.probes.r_min = c.r_min;
  b.probes.r_max = c.r_max;
  b.probes.n_radial = c.n_radial;
  b.probes.n_angular = c.n_angular;
  b.probes.max_rounds = c.max_rounds;
  b.probes.rel_tol = c.rel_tol;
  b.probes.seed = c.seed;
  b.summand = c.e_summand == "sqrt" ? ESummand::geometric : ESummand::plain;
  b.shell_rel_stop = c.shell_rel_stop;
  b.max_shell = c.max_shell;
  b.box = cfg_box(c);
  b.band_lo = c.band_lo;
  b.band_hi = c.band_hi;
  b.pair_slack = c.pair_slack;
  b.dense_limit = std::size_t(c.dense_limit);
  b.analysis = cfg_analysis(c);
  return b;
}

}  // namespace qwave
