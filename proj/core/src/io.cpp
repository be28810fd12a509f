#include "savmac/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "savmac/operators.hpp"

namespace savmac {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string step_name(const char* stem, int step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%06d.csv", stem, step);
  return buf;
}

}  // namespace

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

void write_cell_csv(const std::string& path, const CellField& f,
                    const StaggeredGrid& g, double t) {
  require_cell(f, g);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "nx,ny,h,k,t\n";
  out << g.nx << "," << g.ny << "," << fmt(g.h) << "," << fmt(g.k) << ","
      << fmt(t) << "\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i) out << ",";
      out << fmt(f(i, j));
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

CellCsv read_cell_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("truncated csv: " + path);
  if (!std::getline(in, line)) throw IoError("truncated csv: " + path);
  CellCsv out;
  {
    std::stringstream ss(line);
    std::string item;
    std::getline(ss, item, ',');
    out.nx = std::stoi(item);
    std::getline(ss, item, ',');
    out.ny = std::stoi(item);
    std::getline(ss, item, ',');
    out.h = std::stod(item);
    std::getline(ss, item, ',');
    out.k = std::stod(item);
    std::getline(ss, item, ',');
    out.t = std::stod(item);
  }
  out.field = CellField(out.nx, out.ny);
  for (int j = 0; j < out.ny; ++j) {
    if (!std::getline(in, line)) throw IoError("truncated csv: " + path);
    std::stringstream ss(line);
    std::string item;
    for (int i = 0; i < out.nx; ++i) {
      if (!std::getline(ss, item, ',')) throw IoError("short row in " + path);
      out.field(i, j) = std::stod(item);
    }
  }
  return out;
}

namespace {

void write_vtk_snapshot(const std::string& path, const ChnsState& s,
                        const StaggeredGrid& g, const CellField& u1c,
                        const CellField& u2c) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "# vtk DataFile Version 2.0\n";
  out << "savmac snapshot t=" << fmt(s.t) << "\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << g.nx << " " << g.ny << " 1\n";
  out << "ORIGIN " << fmt(g.x_center(0)) << " " << fmt(g.y_center(0)) << " 0\n";
  out << "SPACING " << fmt(g.h) << " " << fmt(g.k) << " 1\n";
  out << "POINT_DATA " << g.nx * g.ny << "\n";
  out << "SCALARS phase double 1\nLOOKUP_TABLE default\n";
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out << fmt(s.Z(i, j)) << "\n";
  out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out << fmt(s.P(i, j)) << "\n";
  out << "VECTORS velocity double\n";
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out << fmt(u1c(i, j)) << " " << fmt(u2c(i, j)) << " 0\n";
}

}  // namespace

SnapshotRecord write_snapshot(const std::string& dir, int step, const ChnsState& s,
                              const StaggeredGrid& g, bool vtk) {
  ensure_directory(dir);
  SnapshotRecord rec;
  rec.step = step;
  rec.t = s.t;
  const CellField u1c = Px_xface_to_center(s.U1, g);
  const CellField u2c = Py_yface_to_center(s.U2, g);
  rec.z_path = dir + "/" + step_name("Z", step);
  rec.p_path = dir + "/" + step_name("P", step);
  rec.u1c_path = dir + "/" + step_name("U1c", step);
  rec.u2c_path = dir + "/" + step_name("U2c", step);
  write_cell_csv(rec.z_path, s.Z, g, s.t);
  write_cell_csv(rec.p_path, s.P, g, s.t);
  write_cell_csv(rec.u1c_path, u1c, g, s.t);
  write_cell_csv(rec.u2c_path, u2c, g, s.t);
  if (vtk) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "snapshot_%06d.vtk", step);
    rec.vtk_path = dir + "/" + buf;
    write_vtk_snapshot(rec.vtk_path, s, g, u1c, u2c);
  }
  return rec;
}

void write_ledger_csv(const std::string& path, const EnergyLedger& ledger) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "step,t,E,dE,diss_W,diss_U,residual,mass,picard_iters\n";
  for (const EnergyLedgerEntry& e : ledger) {
    out << e.step << "," << fmt(e.t) << "," << fmt(e.E) << "," << fmt(e.dE) << ","
        << fmt(e.diss_W) << "," << fmt(e.diss_U) << "," << fmt(e.residual) << ","
        << fmt(e.mass) << "," << e.picard_iters << "\n";
  }
}

void write_columns_csv(const std::string& path, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size()) throw IoError("write_columns_csv: name/column mismatch");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (size_t c = 0; c < names.size(); ++c) {
    if (c) out << ",";
    out << names[c];
  }
  out << "\n";
  const size_t rows = columns.empty() ? 0 : columns[0].size();
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < columns.size(); ++c) {
      if (c) out << ",";
      out << fmt(columns[c][r]);
    }
    out << "\n";
  }
}

}  // namespace savmac
