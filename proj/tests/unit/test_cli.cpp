#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("ptgauge_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args, const std::string& env = "PTGAUGE_CONFIG=") {
  const fs::path out = scratch() / "stdout", err = scratch() / "stderr";
  const std::string cmd = "env " + env + " " + PTGAUGE_CLI + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

const std::string kAcceptance = "--omega-cap 2 --g 0.5 --drive 1";

}  // namespace

TEST_CASE("spectrum output") {
  const auto r = run("spectrum " + kAcceptance + " --branch + --nmax 3");
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 4);
  const auto gi = column(rows[0], "gamma"), ei = column(rows[0], "E_n"), ok = column(rows[0], "E_n_ok");
  for (int n = 0; n < 3; ++n) {
    const double gamma = std::stod(rows[n + 1][gi]);
    CHECK(std::stod(rows[n + 1][ei]) == doctest::Approx((n + 0.5) * gamma).epsilon(1e-15));
    CHECK(rows[n + 1][ok] == "true");
  }
  const auto free = csv(run("spectrum --omega-cap 2 --g 0 --drive 1 --branch - --nmax 2").out);
  CHECK(std::stod(free[2][column(free[0], "E_n")]) == doctest::Approx(1.5));
}

TEST_CASE("usage errors exit 64") {
  auto r = run("spectrum --g 0.5 --drive 1 --branch +");
  CHECK(r.code == 64);
  CHECK(r.err.find("--omega-cap") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run("").code == 64);
  CHECK(run("spectrum " + kAcceptance + " --branch x").code == 64);
  CHECK(run("spectrum " + kAcceptance + " --branch + --format xml").code == 64);
  CHECK(run("spectrum " + kAcceptance + " --branch + --tol-ode -1").code == 64);
  CHECK(run("sweep " + kAcceptance + " --branch + --param g --min 0 --max 1 --steps 1").code == 64);
}

TEST_CASE("invalid physics exits 2") {
  CHECK(run("spectrum --omega-cap -1 --g 0 --drive 1 --branch +").code == 2);
  CHECK(run("berry --omega-cap 1 --g 0.5 --drive 0 --branch +").code == 2);
}

TEST_CASE("berry and correspondence") {
  auto r = run("berry --omega-cap 2 --g 0 --drive 1 --branch - --n 2");
  CHECK(r.code == 0);
  auto rows = csv(r.out);
  for (const char* c : {"gamma_closed", "gamma_quadrature", "gamma_evolution"})
    CHECK(std::abs(std::stod(rows[1][column(rows[0], c)])) < 1e-9);

  r = run("berry " + kAcceptance + " --branch - --n 0");
  CHECK(r.code == 0);
  rows = csv(r.out);
  CHECK(std::stod(rows[1][column(rows[0], "gamma_closed")]) == doctest::Approx(0.0806080869254815));

  r = run("correspond " + kAcceptance + " --branch + --n 0");
  CHECK(r.code == 0);
  rows = csv(r.out);
  CHECK(std::abs(std::stod(rows[1][column(rows[0], "correspondence_residual")])) < 1e-6);

  r = run("berry --omega-cap 2 --g 3 --drive 1 --branch - --n 5 --max-cutoff 32");
  CHECK(r.code == 3);
  CHECK(r.err.find("cutoff") != std::string::npos);
}

TEST_CASE("verify exit codes") {
  CHECK(run("verify " + kAcceptance + " --branch -").code == 0);
  CHECK(run("verify " + kAcceptance + " --branch +").code == 0);
  const auto r = run("verify " + kAcceptance + " --branch - --inject-fault");
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  const std::string args = "sweep " + kAcceptance + " --branch - --param g --min 0 --max 2 --steps 9 --quantity gamma_quadrature";
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find('\r') == std::string::npos);
}

TEST_CASE("JSON round trip") {
  for (const char* cmd : {"berry", "hannay", "verify", "gauge"}) {
    const auto r = run(std::string(cmd) + " " + kAcceptance + " --branch - --format json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(json::parse(j.dump()) == j);
    CHECK(j["command"] == cmd);
    CHECK(j.contains("inputs"));
    CHECK(j.contains("derived"));
    CHECK(j.contains("outputs"));
    CHECK(j.contains("provenance"));
  }
}

TEST_CASE("sweeps") {
  auto r = run("sweep " + kAcceptance + " --branch - --param g --min 0 --max 1 --steps 2");
  CHECK(r.code == 0);
  CHECK(csv(r.out).size() == 3);

  r = run("sweep --omega-cap 2 --g 0 --drive 1 --branch - --param g --min 0 --max 2 --steps 21 --quantity gamma_closed");
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 22);
  const auto q = column(rows[0], "gamma_closed");
  CHECK(std::stod(rows[1][q]) == 0.0);
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][q]) > std::stod(rows[i - 1][q]));

  r = run("sweep --omega-cap -1 --g 0 --drive 1 --branch + --param g --min 0 --max 0.5 --steps 3 --quantity Gamma --format json");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["records"].size() == 3);
  CHECK(j["records"][0]["Gamma"].is_null());
  CHECK(j["records"][0]["tolerance_met"] == false);
  CHECK(j["records"][1]["Gamma"].is_number());

  r = run("sweep --omega-cap -1 --g 0 --drive 1 --branch + --param omega-cap --min -1 --max -1 --steps 2");
  CHECK(r.code == 2);
}

TEST_CASE("config file and environment") {
  const fs::path cfg = scratch() / "run.cfg";
  std::ofstream(cfg) << "# acceptance point\nomega-cap = 2\ng = 0.5   # coupling\ndrive = 1\nbranch = -\nnmax = 2\n";
  auto r = run("spectrum --config " + cfg.string());
  CHECK(r.code == 0);
  CHECK(csv(r.out).size() == 3);

  r = run("spectrum --nmax 4", "PTGAUGE_CONFIG=" + cfg.string());
  CHECK(r.code == 0);
  const auto rows = csv(r.out);
  CHECK(rows.size() == 5);
  CHECK(rows[1][column(rows[0], "branch")] == "-1");

  r = run("spectrum --branch + --config " + cfg.string());
  CHECK(csv(r.out)[1][column(csv(r.out)[0], "branch")] == "1");

  std::ofstream(cfg) << "colour = blue\n";
  CHECK(run("spectrum --config " + cfg.string()).code == 64);
  CHECK(run("spectrum --config " + (scratch() / "missing.cfg").string()).code == 64);
}

TEST_CASE("evolve and --out") {
  const fs::path out = scratch() / "evolve.csv";
  const auto r = run("evolve " + kAcceptance + " --branch - --superpose 2 --samples 5 --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto rows = csv(slurp(out));
  REQUIRE(rows.size() == 6);
  CHECK(std::stod(rows[5][column(rows[0], "norm")]) == doctest::Approx(1.10100487846271).epsilon(1e-8));
}
