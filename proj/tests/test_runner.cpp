#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <fstream>

#include "helpers.hpp"
#include "snls/runner.hpp"

using namespace snls;

namespace {

const char* kMinimalConfig = R"(
# minimal experiment
grid.n = 64
grid.half_width = 8.0
model.b = 0.5
init.amplitude = 0.4
solver.dt = 0.01
solver.t_end = 0.05
)";

std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("snls_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse_config: minimal config fills defaults and derives alpha") {
  auto c = parse_config(kMinimalConfig);
  CHECK(c.grid.n == 64);
  CHECK(c.model.b == 0.5);
  CHECK(c.derived_alpha() == doctest::Approx(3.0 * kPi));
  CHECK(c.solver.snapshot_stride == 10);
  CHECK(c.validity.boundary_mass_threshold == doctest::Approx(1e-6));
  CHECK(c.observers.size() == 3);
  CHECK(c.init.family == "gaussian");
}

TEST_CASE("parse_config: range violation names the constraint") {
  try {
    parse_config("grid.n = 64\ngrid.half_width = 8\nmodel.b = 1.2\n"
                 "solver.dt = 0.01\nsolver.t_end = 1\n");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.violations().size() == 1);
    CHECK(e.violations()[0].find("(0,1)") != std::string::npos);
  }
}

TEST_CASE("parse_config: duplicates, unknown keys, all violations collected") {
  try {
    parse_config("grid.n = 64\ngrid.n = 128\ngrid.half_width = 8\nmodel.b = 2.0\n"
                 "solver.dt = 0.01\nsolver.t_end = 1\nnot.a.key = 5\n");
    CHECK(false);
  } catch (const ConfigError& e) {
    bool dup = false, unknown = false, range = false;
    for (const auto& v : e.violations()) {
      if (v.find("duplicate") != std::string::npos) dup = true;
      if (v.find("unknown key") != std::string::npos) unknown = true;
      if (v.find("(0,1)") != std::string::npos) range = true;
    }
    CHECK(dup);
    CHECK(unknown);
    CHECK(range);
  }
}

TEST_CASE("config hash is stable across serialization round trips") {
  auto c = parse_config(kMinimalConfig);
  auto c2 = parse_config(canonical_config_text(c));
  CHECK(config_hash(c) == config_hash(c2));
  c2.init.amplitude = 0.5;
  CHECK(config_hash(c) != config_hash(c2));
}

TEST_CASE("checkpoint: bit-exact round trip") {
  auto dir = temp_dir("ckpt");
  auto g = make_grid(32, 4.0);
  auto u = test::random_field(g, 77);
  auto params = ModelParams::make(0.6);
  const auto path = dir / "state.snls";
  checkpoint_write(u, 1.25, params, path);
  auto data = checkpoint_read(path);
  CHECK(data.t == 1.25);
  CHECK(data.params.b == 0.6);
  CHECK(data.field.grid().n == 32);
  CHECK(data.field.grid().half_width == 4.0);
  CHECK(std::memcmp(data.field.data(), u.data(), u.size() * sizeof(Complex)) == 0);
}

TEST_CASE("checkpoint: corrupted magic, wrong version, truncation") {
  auto dir = temp_dir("ckpt_bad");
  auto g = make_grid(32, 4.0);
  auto u = test::random_field(g, 78);
  auto params = ModelParams::make(0.5);
  const auto path = dir / "state.snls";
  checkpoint_write(u, 0.5, params, path);

  auto bytes = slurp(path);
  {
    auto bad = bytes;
    bad[0] = 'X';
    std::ofstream(dir / "bad_magic.snls", std::ios::binary) << bad;
    CHECK_THROWS_AS(checkpoint_read(dir / "bad_magic.snls"), SnlsError);
  }
  {
    auto bad = bytes;
    bad[4] = 2;  // version + 1
    std::ofstream(dir / "bad_version.snls", std::ios::binary) << bad;
    try {
      checkpoint_read(dir / "bad_version.snls");
      CHECK(false);
    } catch (const SnlsError& e) {
      CHECK(std::string(e.what()).find("unsupported") != std::string::npos);
    }
  }
  {
    auto bad = bytes.substr(0, bytes.size() / 2);
    std::ofstream(dir / "short.snls", std::ios::binary) << bad;
    CHECK_THROWS_AS(checkpoint_read(dir / "short.snls"), SnlsError);
  }
}

TEST_CASE("csv round trip preserves every value") {
  auto dir = temp_dir("csv");
  DiagnosticSeries series;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 7; ++i) {
    SeriesRecord r;
    r.t = 0.1 * i;
    r.mass = test::uniform01(rng);
    r.hamiltonian = test::uniform01(rng) * 3.0;
    r.V = test::uniform01(rng);
    r.M_mom = test::uniform01(rng) - 0.5;
    r.K = test::uniform01(rng);
    r.G = -test::uniform01(rng);
    r.l4 = test::uniform01(rng);
    r.h1 = test::uniform01(rng);
    r.sigma = test::uniform01(rng);
    r.w14 = test::uniform01(rng);
    r.linf = test::uniform01(rng);
    r.boundary_mass_fraction = 1e-9 * test::uniform01(rng);
    series.records.push_back(r);
  }
  write_series_csv(series, dir / "series.csv");
  auto back = read_series_csv(dir / "series.csv");
  REQUIRE(back.records.size() == series.records.size());
  for (std::size_t i = 0; i < series.records.size(); ++i) {
    CHECK(back.records[i].t == series.records[i].t);
    CHECK(back.records[i].mass == series.records[i].mass);
    CHECK(back.records[i].G == series.records[i].G);
    CHECK(back.records[i].boundary_mass_fraction ==
          series.records[i].boundary_mass_fraction);
  }
}

TEST_CASE("run: zero amplitude gives an all-zero series") {
  auto dir = temp_dir("zero_run");
  auto c = parse_config(kMinimalConfig);
  c.init.amplitude = 0.0;
  c.output.directory = dir.string();
  auto series = run(c);
  CHECK(series.records.size() >= 2);
  for (const auto& r : series.records) {
    CHECK(r.mass == 0.0);
    CHECK(r.hamiltonian == 0.0);
    CHECK(r.G == 0.0);
  }
  CHECK(std::filesystem::exists(dir / "manifest.json"));
  CHECK(std::filesystem::exists(dir / "series.csv"));
}

TEST_CASE("run: deterministic rerun produces byte-identical outputs") {
  auto c = parse_config(kMinimalConfig);
  auto d1 = temp_dir("det1");
  auto d2 = temp_dir("det2");
  c.output.directory = d1.string();
  run(c);
  c.output.directory = d2.string();
  run(c);
  CHECK(slurp(d1 / "series.csv") == slurp(d2 / "series.csv"));
  CHECK(slurp(d1 / "snapshot_00000.snls") == slurp(d2 / "snapshot_00000.snls"));
}

TEST_CASE("run: canonical-style short run has G <= 0 column-wide") {
  auto dir = temp_dir("gle0");
  auto c = parse_config(kMinimalConfig);
  c.init.amplitude = 0.45;
  c.init.center_x = 1.0;
  c.output.directory = dir.string();
  auto series = run(c);
  for (const auto& r : series.records) CHECK(r.G <= 1e-12);

  // the directory round-trips through the loader
  auto loaded = load_run_directory(dir);
  CHECK(loaded.records.size() == series.records.size());
  CHECK(loaded.snapshots.size() == series.snapshot_files.size());
}
