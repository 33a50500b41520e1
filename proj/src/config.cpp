#include "fraclab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fraclab/errors.hpp"

namespace fraclab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("config key '" + key + "': cannot parse '" + text + "'");
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + text + "'");
}

std::array<double, 3> parse_point(const std::string& key, const std::string& text) {
  std::array<double, 3> p{0.0, 0.0, 0.0};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 3) throw ConfigError("config key '" + key + "': at most 3 coordinates");
    p[i++] = parse_number<double>(key, trim(item));
  }
  if (i == 0) throw ConfigError("config key '" + key + "': empty point");
  return p;
}

std::string format_point(const std::array<double, 3>& p) {
  return format_number(p[0]) + "," + format_number(p[1]) + "," + format_number(p[2]);
}

bool apply_forcing(ForcingSpec& spec, const std::string& field, const std::string& key,
                   const std::string& value) {
  if (field == "kind") {
    spec.kind = value;
  } else if (field == "center") {
    spec.center = parse_point(key, value);
  } else if (field == "size") {
    spec.size = parse_number<double>(key, value);
  } else if (field == "fraction") {
    spec.fraction = parse_number<double>(key, value);
  } else {
    return false;
  }
  return true;
}

void validate_forcing(const ForcingSpec& spec, const std::string& name) {
  using detail::require;
  require(spec.kind == "gaussian" || spec.kind == "indicator" || spec.kind == "mode" ||
              spec.kind == "zero",
          name + ".kind must be gaussian, indicator, mode or zero");
  require(spec.size > 0.0, name + ".size must be positive");
  require(spec.fraction > 0.0 && spec.fraction <= 1.0, name + ".fraction must lie in (0, 1]");
}

}  // namespace

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key.rfind("f.", 0) == 0) {
    if (apply_forcing(c.f, key.substr(2), key, v)) return;
  } else if (key.rfind("g.", 0) == 0) {
    if (key == "g.kind" && v == "same") {
      c.g_same_as_f = true;
      return;
    }
    if (apply_forcing(c.g, key.substr(2), key, v)) {
      c.g_same_as_f = false;
      return;
    }
  } else if (key == "dimension") {
    c.dimension = parse_number<int>(key, v);
    return;
  } else if (key == "s") {
    c.s = parse_number<double>(key, v);
    return;
  } else if (key == "alpha") {
    c.alpha = parse_number<double>(key, v);
    return;
  } else if (key == "beta") {
    c.beta = parse_number<double>(key, v);
    return;
  } else if (key == "gamma") {
    if (v == "auto") {
      c.gamma.reset();
    } else {
      c.gamma = parse_number<int>(key, v);
    }
    return;
  } else if (key == "grid_size") {
    c.grid_size = parse_number<int>(key, v);
    return;
  } else if (key == "box_length") {
    c.box_length = parse_number<double>(key, v);
    return;
  } else if (key == "tol") {
    c.tol = parse_number<double>(key, v);
    return;
  } else if (key == "max_iter") {
    c.max_iter = parse_number<int>(key, v);
    return;
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, v);
    return;
  } else if (key == "output") {
    c.output = v;
    return;
  } else if (key == "field_format") {
    c.field_format = v;
    return;
  } else if (key == "restarts") {
    c.restarts = parse_number<int>(key, v);
    return;
  } else if (key == "sweep") {
    c.sweep = parse_bool(key, v);
    return;
  } else if (key == "sweep_count") {
    c.sweep_count = parse_number<int>(key, v);
    return;
  } else if (key == "bubble.lambda") {
    c.bubble_lambda = parse_number<double>(key, v);
    return;
  } else if (key == "bubble.normalization") {
    c.bubble_normalization = parse_number<double>(key, v);
    return;
  } else if (key == "ground_state.tol") {
    c.ground_state_tol = parse_number<double>(key, v);
    return;
  } else if (key == "fit.inner") {
    c.fit_inner = parse_number<double>(key, v);
    return;
  } else if (key == "fit.outer") {
    c.fit_outer = parse_number<double>(key, v);
    return;
  } else if (key == "verify.samples") {
    c.verify_samples = parse_number<int>(key, v);
    return;
  } else if (key == "verify.corrupt_multiplier") {
    c.verify_corrupt_multiplier = parse_number<double>(key, v);
    return;
  }
  throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    apply_setting(c, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

SystemParams ExperimentConfig::system_params() const {
  return make_params(dimension, s, alpha, beta, gamma);
}

SystemParams ExperimentConfig::quotient_params() const {
  return make_quotient_params(dimension, s, alpha, beta, gamma);
}

GridPtr<double> ExperimentConfig::make_grid() const {
  return fraclab::make_grid(dimension, grid_size, box_length);
}

MinimizeOpts ExperimentConfig::minimize_opts() const { return {tol, max_iter}; }

void ExperimentConfig::validate() const {
  using detail::require;
  quotient_params();
  make_grid();
  require(tol > 0.0, "tol must be positive");
  require(max_iter > 0, "max_iter must be positive");
  require(field_format == "csv" || field_format == "bin", "field_format must be csv or bin");
  validate_forcing(f, "f");
  if (!g_same_as_f) validate_forcing(g, "g");
  require(restarts >= 0, "restarts must be nonnegative");
  require(sweep_count > 0, "sweep_count must be positive");
  require(bubble_lambda > 0.0, "bubble.lambda must be positive");
  require(bubble_normalization > 0.0, "bubble.normalization must be positive");
  require(ground_state_tol > 0.0, "ground_state.tol must be positive");
  require(fit_inner > 0.0 && fit_outer > fit_inner && fit_outer <= 1.0,
          "fit window must satisfy 0 < fit.inner < fit.outer <= 1");
  require(verify_samples > 0, "verify.samples must be positive");
}

FlatRecord ExperimentConfig::to_record() const {
  FlatRecord r;
  r.set("dimension", dimension)
      .set("s", s)
      .set("alpha", alpha)
      .set("beta", beta)
      .set("gamma", gamma ? std::to_string(*gamma) : std::string("auto"))
      .set("grid_size", grid_size)
      .set("box_length", box_length)
      .set("tol", tol)
      .set("max_iter", max_iter)
      .set("seed", static_cast<std::int64_t>(seed))
      .set("output", output.string())
      .set("field_format", field_format);
  const auto add_forcing = [&r](const std::string& name, const ForcingSpec& spec) {
    r.set(name + ".kind", spec.kind)
        .set(name + ".center", format_point(spec.center))
        .set(name + ".size", spec.size)
        .set(name + ".fraction", spec.fraction);
  };
  add_forcing("f", f);
  add_forcing("g", g_same_as_f ? f : g);
  r.set("g.same_as_f", g_same_as_f)
      .set("restarts", restarts)
      .set("sweep", sweep)
      .set("sweep_count", sweep_count)
      .set("bubble.lambda", bubble_lambda)
      .set("bubble.normalization", bubble_normalization)
      .set("ground_state.tol", ground_state_tol)
      .set("fit.inner", fit_inner)
      .set("fit.outer", fit_outer)
      .set("verify.samples", verify_samples)
      .set("verify.corrupt_multiplier", verify_corrupt_multiplier);
  return r;
}

Functional build_forcing(const ForcingSpec& spec, const GridPtr<double>& grid,
                         const SystemParams& params, double threshold) {
  if (spec.kind == "zero") return Functional::zero(grid, params.s);
  Field density = [&] {
    if (spec.kind == "gaussian") return gaussian_density(grid, spec.center, spec.size, 1.0);
    if (spec.kind == "indicator") return indicator_density(grid, spec.center, spec.size, 1.0);
    if (spec.kind == "mode") {
      const int k = static_cast<int>(spec.size);
      detail::require(k == spec.size, "mode forcing needs an integer size (wavenumber)");
      return mode_density(grid, {k, 0, 0}, 1.0);
    }
    throw ConfigError("unknown forcing kind '" + spec.kind + "'");
  }();
  return scale_to_norm(make_forcing(density, params), spec.fraction * threshold, params.regime);
}

}  // namespace fraclab
