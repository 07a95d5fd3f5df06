#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "snls/solver.hpp"

namespace snls {

/// Full experiment description. alpha never appears: it is derived from b.
struct RunConfig {
  struct {
    int n = 0;
    double half_width = 0.0;
  } grid;
  struct {
    double b = 0.5;
    OriginRule origin_rule = OriginRule::CellAverage;
    double epsilon = 0.0;
  } model;
  struct {
    std::string family = "gaussian";  // gaussian | bump | random_band_limited
    double amplitude = 1.0;
    double sigma = 1.0;
    double center_x = 0.0, center_y = 0.0;
    double kx = 0.0, ky = 0.0;
    double radius = 1.0, smoothness = 1.0;  // bump
    unsigned long long seed = 1;            // random_band_limited
    double cutoff = 8.0;                    // random_band_limited
  } init;
  struct {
    double dt = 1e-3;
    double t_end = 1.0;
    int snapshot_stride = 10;
    int field_every = 4;
  } solver;
  struct {
    double boundary_mass_threshold = 1e-6;
    int boundary_shell_cells = 4;
  } validity;
  std::vector<std::string> observers = {"invariants", "norms", "snapshots"};
  struct {
    std::string directory = ".";
    std::vector<std::string> formats = {"csv", "json"};
  } output;

  double derived_alpha() const { return 2.0 * kPi * (2.0 - model.b); }
};

/// Parses the dotted-key text format ("section.key = value", '#' comments).
/// Unknown keys, duplicate keys and range violations are all collected and
/// thrown together as a ConfigError; range messages name the constraint
/// being broken.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Canonical serialization (sorted dotted keys); config_hash is FNV-1a 64
/// over exactly this text.
std::string canonical_config_text(const RunConfig& config);
std::uint64_t config_hash(const RunConfig& config);

/// Builds the initial datum described by config.init.
ComplexField make_initial_datum(const GridPtr& grid, const RunConfig& config);

/// Runs the experiment, writing manifest.json, series.csv and snapshot
/// checkpoints into config.output.directory. Deterministic for a fixed
/// config and thread count.
DiagnosticSeries run(const RunConfig& config);

/// Checkpoint format (bit-exact, little-endian):
///   magic "SNLS" (0x53 0x4E 0x4C 0x53), version u32 = 1, n u32,
///   half_width f64, b f64, alpha f64, t f64,
///   then n^2 samples as interleaved (re f64, im f64), row-major.
/// alpha is stored redundantly and checked against 2pi(2-b) on read.
void checkpoint_write(const ComplexField& field, double t, const ModelParams& params,
                      const std::filesystem::path& path);

struct CheckpointData {
  ComplexField field;
  double t = 0.0;
  ModelParams params;
};

CheckpointData checkpoint_read(const std::filesystem::path& path);

/// series.csv round trip (records only; snapshots live in checkpoint files).
void write_series_csv(const DiagnosticSeries& series, const std::filesystem::path& path);
DiagnosticSeries read_series_csv(const std::filesystem::path& path);

/// Loads a persisted run directory: series.csv plus any snapshot checkpoints.
DiagnosticSeries load_run_directory(const std::filesystem::path& dir);

}  // namespace snls
