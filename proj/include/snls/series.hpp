#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snls/grid.hpp"

namespace snls {

/// One observation row. Matches the CSV schema column-for-column.
struct SeriesRecord {
  double t = 0.0;
  double mass = 0.0;         // ||u||_2
  double hamiltonian = 0.0;  // H(u)
  double V = 0.0;            // int |x|^2 |u|^2
  double M_mom = 0.0;        // 2 int Im(conj(u) x.grad u)
  double K = 0.0;            // ||(x+2it grad)u||_2^2 + (4t^2/alpha) int T3 w
  double G = 0.0;            // int g(|u|^2) w
  double l4 = 0.0;
  double h1 = 0.0;
  double sigma = 0.0;
  double w14 = 0.0;
  double linf = 0.0;
  double boundary_mass_fraction = 0.0;
};

/// CSV header, in column order.
const std::vector<std::string>& series_columns();

struct Snapshot {
  double t = 0.0;
  ComplexField field;
};

/// Time-indexed diagnostics of one run: uniform-cadence records plus (sparser)
/// stored fields. snapshot_files holds checkpoint paths when the run was
/// persisted to disk.
struct DiagnosticSeries {
  std::uint64_t config_hash = 0;
  std::vector<SeriesRecord> records;
  std::vector<Snapshot> snapshots;
  std::vector<std::string> snapshot_files;

  std::vector<double> record_times() const;
  std::vector<double> column(const std::string& name) const;
};

}  // namespace snls
