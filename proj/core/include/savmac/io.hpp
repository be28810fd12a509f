/// @file io.hpp
/// @brief CSV snapshots and ledgers, plus an optional legacy-VTK mirror.
///
/// Cell CSV layout: two header lines (column names, then nx,ny,h,k,t) and
/// ny data rows of nx comma-separated values, j increasing downward, i
/// increasing along each row.  Floats print with %.17g so a write/read
/// round trip is bit exact.

#pragma once

#include <string>
#include <vector>

#include "savmac/grid.hpp"
#include "savmac/model.hpp"

namespace savmac {

struct CellCsv {
  CellField field;
  int nx = 0, ny = 0;
  double h = 0.0, k = 0.0, t = 0.0;
};

void write_cell_csv(const std::string& path, const CellField& f,
                    const StaggeredGrid& g, double t);
CellCsv read_cell_csv(const std::string& path);

struct SnapshotRecord {
  int step = 0;
  double t = 0.0;
  std::string z_path, p_path, u1c_path, u2c_path, vtk_path;
};

/// Writes Z, P and the center-interpolated velocity components as cell CSVs
/// (and a legacy-VTK structured-points mirror when requested).
SnapshotRecord write_snapshot(const std::string& dir, int step, const ChnsState& s,
                              const StaggeredGrid& g, bool vtk = false);

void write_ledger_csv(const std::string& path, const EnergyLedger& ledger);

/// Generic column-oriented CSV for per-step observables.
void write_columns_csv(const std::string& path, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns);

void ensure_directory(const std::string& dir);

}  // namespace savmac
