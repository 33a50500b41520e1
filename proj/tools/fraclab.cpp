// Command-line front end: fraclab <constants|bubble|ground-state|solve|verify> [flags]
//
// Exit status: 0 when every check passes, 1 on a numerical failure or a
// failed check, 2 on a configuration error.

#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fraclab/commands.hpp"
#include "fraclab/errors.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<int> dimension;
  std::optional<double> s;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<int> grid_size;
  std::optional<double> box_length;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> settings;  // --set key=value
};

void add_common_flags(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config, "key = value config file");
  cmd.add_option("--dimension", o.dimension, "space dimension N (1-3)");
  cmd.add_option("--s", o.s, "fractional order s in (0, 1]");
  cmd.add_option("--alpha", o.alpha, "exponent alpha");
  cmd.add_option("--beta", o.beta, "exponent beta");
  cmd.add_option("--grid-size", o.grid_size, "points per axis (power of two, >= 16)");
  cmd.add_option("--box-length", o.box_length, "box side L");
  cmd.add_option("--tol", o.tol, "solver and quotient tolerance");
  cmd.add_option("--max-iter", o.max_iter, "iteration cap");
  cmd.add_option("--output", o.output, "output directory");
  cmd.add_option("--seed", o.seed, "seed of the mt19937_64 generator");
  cmd.add_option("--set", o.settings, "extra config setting key=value (repeatable)");
}

fraclab::ExperimentConfig resolve(const Overrides& o) {
  fraclab::ExperimentConfig c = o.config.empty() ? fraclab::ExperimentConfig{}
                                                 : fraclab::load_config(o.config);
  for (const auto& kv : o.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw fraclab::ConfigError("--set expects key=value, got " + kv);
    fraclab::apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.dimension) c.dimension = *o.dimension;
  if (o.s) c.s = *o.s;
  if (o.alpha) c.alpha = *o.alpha;
  if (o.beta) c.beta = *o.beta;
  if (o.grid_size) c.grid_size = *o.grid_size;
  if (o.box_length) c.box_length = *o.box_length;
  if (o.tol) c.tol = *o.tol;
  if (o.max_iter) c.max_iter = *o.max_iter;
  if (o.output) c.output = *o.output;
  if (o.seed) c.seed = *o.seed;
  return c;
}

int report(const fraclab::CommandOutcome& out) {
  for (const auto& c : out.checks) {
    std::printf("%s %s value=%s bound=%s (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                fraclab::format_number(c.value).c_str(), fraclab::format_number(c.bound).c_str(),
                c.detail.c_str());
  }
  for (const auto& w : out.warnings) std::printf("WARNING %s\n", w.c_str());
  for (const auto& f : out.files) std::printf("wrote %s\n", f.string().c_str());
  return out.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using Command = std::function<fraclab::CommandOutcome(const fraclab::ExperimentConfig&)>;
  const std::vector<std::pair<std::string, Command>> commands = {
      {"constants", fraclab::cmd_constants},
      {"bubble", fraclab::cmd_bubble},
      {"ground-state", fraclab::cmd_ground_state},
      {"solve", fraclab::cmd_solve},
      {"verify", fraclab::cmd_verify},
  };
  const std::map<std::string, std::string> help = {
      {"constants", "Sobolev constants, ratio, radius, threshold (sweep = true for the pair sweep)"},
      {"bubble", "sample the critical bubble and fit its decay"},
      {"ground-state", "subcritical ground state and its decay"},
      {"solve", "minimize the energy inside the convexity ball"},
      {"verify", "run the invariant suite"},
  };

  CLI::App app{"Fractional Laplacian system solver and verification lab"};
  app.require_subcommand(1);
  Overrides overrides;
  for (const auto& [name, fn] : commands) add_common_flags(*app.add_subcommand(name, help.at(name)), overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto config = resolve(overrides);
    for (const auto& [name, fn] : commands) {
      if (app.got_subcommand(name)) return report(fn(config));
    }
  } catch (const fraclab::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const fraclab::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
