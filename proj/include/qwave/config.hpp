#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qwave/analysis.hpp"
#include "qwave/frame_bounds.hpp"
#include "qwave/grid.hpp"
#include "qwave/wavelet.hpp"

namespace qwave {

// Experiment description parsed from a flat JSON object whose keys are dotted
// paths ("grid.lambda0", "bounds.n_radial", ...).  Unknown keys are rejected
// with std::invalid_argument("unknown config key: ..."), as are out-of-range
// enumerations and wrongly typed values.  Defaults below reproduce the
// validated 2D study.
struct ExperimentConfig {
  std::string mode = "2d";  // "2d" | "4d"

  double box_side = 14.0;  // per-axis side length (square box)
  int box_n = 64;          // samples per axis

  std::string wavelet_name = "log";  // "log" | "morlet" | "gaussian"
  double wavelet_k0 = 5.0;

  std::string normalization = "l1";  // "l1" | "l2"

  // 2D dilation-rotation grid (lambda0, L) also feeds the 4D first factor.
  double lambda0 = 0.5;
  int L = 8;
  int t_max = 4;
  double beta0 = 0.7, beta1 = 0.7;
  int m_range = 2;
  std::string scale_mode = "ring";  // "ring" | "base"
  double eta = 1.0;  // ring-area acceptance threshold for the grid report

  // 4D-only grid parameters.
  double lambda01 = 0.5, lambda02 = 0.5;
  int L1 = 4, L2 = 4;
  int j_max = 2;
  double beta2 = 1.0, beta3 = 1.0;

  double band_lo = 0.75, band_hi = 2.0;

  // Frame-bound study budget.
  double r_min = 0.0, r_max = 0.0;
  int n_radial = 32, n_angular = 24, max_rounds = 5;
  double rel_tol = 5e-3;
  std::string e_summand = "sqrt";  // "sqrt" | "product"
  double shell_rel_stop = 1e-10;
  int max_shell = 12;
  double pair_slack = 1.0;
  int dense_limit = 256;
  bool require_frame = false;  // bounds/lift exit 3 unless verdict == "frame"

  std::vector<double> sweep_betas = {0.35, 0.5, 0.7, 1.0, 1.4, 2.0};
  std::string box_scale = "matched";  // "matched" | "fixed"

  std::string translation_mode = "exact";  // "exact" | "snap"

  int reconstruct_iters = 200;
  double reconstruct_tol = 1e-6;
  std::string reconstruct_method = "cg";  // "cg" | "richardson"

  int threads = 1;
  unsigned seed = 1234;
  std::string out = ".";
  std::string input;  // optional field file consumed by analyze/reconstruct
};

// Canonical flat echo: every key in a fixed order, defaults filled in.
nlohmann::ordered_json config_echo(const ExperimentConfig& cfg);

// Strict parse of a flat dotted-key object (see ExperimentConfig).
ExperimentConfig parse_config(const nlohmann::json& flat);

// Reads and parses a JSON config file; failures throw std::invalid_argument.
ExperimentConfig load_config_file(const std::string& path);

// The raw flat object from a config file, before overrides are applied.
nlohmann::json load_config_json(const std::string& path);

// Applies one "dotted.key=value" override onto the flat object; the value is
// parsed as JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json& flat, const std::string& keyval);

// FNV-1a 64-bit hex digest of the canonical echo with "out" removed, so the
// destination directory does not perturb file contents.
std::string config_hash(const ExperimentConfig& cfg);

MotherWavelet cfg_wavelet(const ExperimentConfig& cfg);
BoxSpec cfg_box(const ExperimentConfig& cfg);
GridSpec2D cfg_grid2d(const ExperimentConfig& cfg);
GridSpec4D cfg_grid4d(const ExperimentConfig& cfg);
AnalysisOptions cfg_analysis(const ExperimentConfig& cfg);
BoundsOptions cfg_bounds(const ExperimentConfig& cfg);

}  // namespace qwave
