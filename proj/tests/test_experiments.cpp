#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "knot/errors.hpp"
#include "knot/experiments.hpp"

using namespace knot;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "knot_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// file contents with '#' comment lines stripped
std::string body_of(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') out << line << "\n";
  return out.str();
}

std::vector<std::vector<double>> rows_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (...) {
        numeric = false;
      }
    }
    if (numeric && !row.empty()) rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("decompose experiment produces the circle row") {
  ExperimentConfig cfg = ExperimentConfig::from_text(
      "exp.kind = decompose\n"
      "curve.kind = circle\n"
      "curve.n = 256\n"
      "quad.nx = 256\n"
      "quad.nw = 256\n");
  fs::path dir = fresh_dir("decompose");
  auto files = run(cfg, dir);
  auto rows = rows_of(dir / "decompose.csv");
  REQUIRE(rows.size() == 1);
  // columns: N_x, N_w, e_mobius, e1, e2, residual, tail (curve_id dropped
  // by the numeric parser)
  CHECK(std::fabs(rows[0][2] - 4.0) < 1e-2);
  CHECK(std::fabs(rows[0][3] - 2.0 * M_PI * M_PI) < 1e-2);
  CHECK(std::fabs(rows[0][5]) < 1e-2);
}

TEST_CASE("mollify sweep rows decrease") {
  ExperimentConfig cfg = ExperimentConfig::from_text(
      "exp.kind = mollify-sweep\n"
      "curve.kind = circle\n"
      "curve.n = 256\n"
      "eps.list = 0.2,0.1,0.05\n");
  fs::path dir = fresh_dir("mollify");
  run(cfg, dir);
  auto rows = rows_of(dir / "mollify_sweep.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][3] > rows[1][3]);
  CHECK(rows[1][3] > rows[2][3]);
}

TEST_CASE("reparam converge emits one row per epsilon") {
  ExperimentConfig cfg = ExperimentConfig::from_text(
      "exp.kind = reparam-converge\n"
      "curve.kind = ellipse\n"
      "curve.n = 256\n"
      "eps.list = 0.05\n");
  fs::path dir = fresh_dir("reparam");
  run(cfg, dir);
  auto rows = rows_of(dir / "reparam_converge.csv");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][0] == 0.05);
  CHECK(rows[0][1] > 0.0);
}

TEST_CASE("unknown experiment kind is a validation error") {
  ExperimentConfig cfg = ExperimentConfig::from_text("exp.kind = frobnicate\n");
  fs::path dir = fresh_dir("unknown");
  try {
    run(cfg, dir);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.is_validation());
  }
}

TEST_CASE("config parsing") {
  ExperimentConfig cfg =
      ExperimentConfig::from_text("# comment\n a = 1 \n b.c = x y \n");
  CHECK(cfg.get_string("a", "") == "1");
  CHECK(cfg.get_string("b.c", "") == "x y");
  CHECK_THROWS_AS(ExperimentConfig::from_text("not a pair\n"), Error);
  CHECK_THROWS_AS(cfg.get_double("b.c", 0.0), Error);

  // resolved text round-trips through the parser
  ExperimentConfig again = ExperimentConfig::from_text(cfg.resolved_text());
  CHECK(again.get_string("a", "") == "1");
  CHECK(again.get_string("b.c", "") == "x y");
}

TEST_CASE("determinism: identical config, identical bytes") {
  const char* text =
      "exp.kind = gamma-sweep\n"
      "curve.kind = circle\n"
      "curve.n = 128\n"
      "quad.nx = 128\n"
      "quad.nw = 128\n"
      "m.list = 8,16\n";
  fs::path d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
  run(ExperimentConfig::from_text(text), d1);
  run(ExperimentConfig::from_text(text), d2);
  CHECK(body_of(d1 / "gamma_sweep.csv") == body_of(d2 / "gamma_sweep.csv"));
  CHECK(body_of(d1 / "config_resolved.txt") ==
        body_of(d2 / "config_resolved.txt"));
}

TEST_CASE("curve sample files round-trip") {
  ExperimentConfig cfg;
  ClosedCurve c1 = make_curve(ExperimentConfig::from_text(
      "curve.kind = circle\ncurve.n = 64\ncurve.normalize = false\n"));
  fs::path dir = fresh_dir("samples");
  save_curve_samples(c1, dir / "c.csv", "test");
  ClosedCurve back = load_curve_samples(dir / "c.csv");
  CHECK((back.samples() - c1.samples()).cwiseAbs().maxCoeff() < 1e-11);

  std::ofstream bad(dir / "bad.csv");
  bad << "t,x1,x2\n0.0,1.0,0.0\n0.3,0.0,1.0\n";
  bad.close();
  CHECK_THROWS_AS(load_curve_samples(dir / "bad.csv"), Error);
}
