#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef FRACLAB_CLI
#error "FRACLAB_CLI must name the command-line binary"
#endif

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fraclab_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + FRACLAB_CLI + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json report(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  const auto out = scratch("codes");
  CHECK(run("constants --alpha 1 --output " + out.string()) == 2);
  CHECK(run("constants --grid-size 30 --output " + out.string()) == 2);
  CHECK(run("solve --set no_such_key=1 --output " + out.string()) == 2);
  CHECK(run("bubble --output " + out.string()) == 2);  // default config is subcritical
  CHECK(run("frobnicate") == 2);
  CHECK(run("--help") == 0);
  CHECK(run("verify --output " + out.string()) == 0);
  CHECK(run("verify --set verify.corrupt_multiplier=1e-6 --output " + out.string()) == 1);
  const auto j = report(out / "verify.json");
  CHECK(j["check.multiplier_exactness"] == false);
  CHECK(j["check.gradient_fidelity"] == true);
  CHECK(j["pass"] == false);
}

TEST_CASE("config file and flag precedence") {
  const auto out = scratch("config");
  fs::create_directories(out);
  {
    std::ofstream cfg(out / "run.cfg");
    cfg << "# critical bubble\ngamma = 0\ngrid_size = 256\nbox_length = 400\nbubble.lambda = 2\n";
  }
  CHECK(run("bubble --config " + (out / "run.cfg").string() + " --grid-size 1024 --output " +
            (out / "b").string()) == 0);
  const auto j = report(out / "b" / "bubble.json");
  CHECK(j["config.grid_size"] == 1024);
  CHECK(j["config.gamma"] == "0");
  CHECK(j["lambda"] == 2.0);
  CHECK(fs::exists(out / "b" / "bubble.csv"));
  CHECK(run("bubble --config " + (out / "missing.cfg").string()) == 2);
}

TEST_CASE("reports are reproducible for a fixed seed") {
  const auto a = scratch("seed_a");
  const auto b = scratch("seed_b");
  const auto c = scratch("seed_c");
  const std::string common = "solve --grid-size 64 --set restarts=2 --set output=";
  REQUIRE(run(common + a.string() + " --seed 7") == 0);
  REQUIRE(run(common + b.string() + " --seed 7") == 0);
  REQUIRE(run(common + c.string() + " --seed 8") == 0);
  for (const char* name : {"trace.csv", "u_bar.csv", "v_bar.csv"})
    CHECK(slurp(a / name) == slurp(b / name));
  auto ja = report(a / "solve.json");
  auto jb = report(b / "solve.json");
  ja.erase("config.output");
  jb.erase("config.output");
  CHECK(ja == jb);

  // Another seed moves the restarts only; every verdict stays the same.
  const auto jc = report(c / "solve.json");
  for (const auto& [key, value] : ja.items())
    if (key.rfind("check.", 0) == 0) CHECK(jc[key] == value);

  const auto va = scratch("verify_a");
  const auto vc = scratch("verify_c");
  REQUIRE(run("verify --seed 1 --output " + va.string()) == 0);
  REQUIRE(run("verify --seed 99 --output " + vc.string()) == 0);
  CHECK(report(va / "verify.json")["pass"] == report(vc / "verify.json")["pass"]);
}

TEST_CASE("constants sweep and ground state") {
  const auto out = scratch("misc");
  CHECK(run("constants --set sweep=true --grid-size 64 --output " + out.string()) == 0);
  const auto j = report(out / "sweep.json");
  CHECK(j["rows"] == 50);
  CHECK(j["min_coercivity_margin"].get<double>() > 0.0);
  std::ifstream csv(out / "sweep.csv");
  int lines = 0;
  for (std::string line; std::getline(csv, line);) ++lines;
  CHECK(lines == 51);

  CHECK(run("ground-state --alpha 1.5 --beta 1.5 --grid-size 256 --output " + out.string()) <= 1);
  CHECK(fs::exists(out / "ground_state.json"));
  CHECK(report(out / "ground_state.json")["check.residual"] == true);
}

}
