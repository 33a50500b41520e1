#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "fraclab/constants.hpp"
#include "fraclab/forcing.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/params.hpp"
#include "fraclab/report.hpp"

namespace fraclab {

/// How a forcing density is built. `kind` is gaussian, indicator, mode or
/// zero; `size` is the width (gaussian), radius (indicator) or wavenumber
/// along the first axis (mode). The density is rescaled so its dual norm is
/// fraction * d.
struct ForcingSpec {
  std::string kind = "gaussian";
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double size = 1.0;
  double fraction = 0.5;
};

/// Every setting of a run. Parsed from a key = value file ('#' starts a
/// comment), then overridden by command-line flags. Keys:
///
///   dimension, s, alpha, beta, gamma, grid_size, box_length, tol, max_iter,
///   seed, output, field_format (csv | bin),
///   f.kind, f.center, f.size, f.fraction and the same for g (g.kind = same
///   copies f), restarts, sweep, sweep_count,
///   bubble.lambda, bubble.normalization, ground_state.tol,
///   fit.inner, fit.outer, verify.samples, verify.corrupt_multiplier
struct ExperimentConfig {
  int dimension = 1;
  double s = 0.25;
  double alpha = 2.0;
  double beta = 2.0;
  std::optional<int> gamma = 1;
  int grid_size = 64;
  double box_length = 40.0;
  double tol = 1e-8;
  int max_iter = 10000;
  std::uint64_t seed = 1;
  std::filesystem::path output = "fraclab_out";
  std::string field_format = "csv";

  ForcingSpec f;
  ForcingSpec g;
  bool g_same_as_f = true;
  int restarts = 2;

  bool sweep = false;
  int sweep_count = 50;

  double bubble_lambda = 1.0;
  double bubble_normalization = 1.0;
  double ground_state_tol = 1e-6;
  double fit_inner = 0.25;
  double fit_outer = 0.45;

  int verify_samples = 200;
  /// Relative perturbation of the multiplier under test in the exactness
  /// check; 0 leaves it intact.
  double verify_corrupt_multiplier = 0.0;

  /// System parameters (alpha, beta > 1).
  SystemParams system_params() const;
  /// Quotient parameters (alpha, beta >= 1).
  SystemParams quotient_params() const;
  GridPtr<double> make_grid() const;
  MinimizeOpts minimize_opts() const;
  /// Checks every field; throws ConfigError naming the first violation.
  void validate() const;

  /// The fully resolved configuration, for embedding in reports.
  FlatRecord to_record() const;
};

/// Applies one `key = value` setting. Unknown keys and malformed values throw
/// ConfigError.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Builds the forcing functional for `spec`, scaled to spec.fraction * threshold.
Functional build_forcing(const ForcingSpec& spec, const GridPtr<double>& grid,
                         const SystemParams& params, double threshold);

}  // namespace fraclab
