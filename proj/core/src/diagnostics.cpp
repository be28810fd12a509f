#include "savmac/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace savmac {

EnergyLedgerEntry energy_audit(const ChnsState& prev, const ChnsState& next,
                               const CellField& Wmid, const XFaceField& U1mid,
                               const YFaceField& U2mid, const Params& p,
                               const StaggeredGrid& g, int step, int picard_iters) {
  EnergyLedgerEntry e;
  e.step = step;
  e.t = next.t;
  const double E_prev = energy_total(prev, p, g);
  e.E = energy_total(next, p, g);
  e.dE = e.E - E_prev;
  e.diss_W = p.mobility * p.dt * grad_norm_sq_cell(Wmid, g);
  e.diss_U = p.nu * p.dt * velocity_Dnorm_sq(U1mid, U2mid, g);
  e.residual = e.dE + e.diss_W + e.diss_U;
  CellField one(g, 1.0);
  e.mass = inner_M(next.Z, one, g);
  e.picard_iters = picard_iters;
  return e;
}

void require_refinement(const StaggeredGrid& coarse, const StaggeredGrid& fine) {
  const bool ok = fine.nx == 2 * coarse.nx && fine.ny == 2 * coarse.ny &&
                  fine.x_lo == coarse.x_lo && fine.x_hi == coarse.x_hi &&
                  fine.y_lo == coarse.y_lo && fine.y_hi == coarse.y_hi;
  if (!ok) throw ShapeError("restriction requires an exact 2x refinement");
}

CellField restrict_cell(const CellField& f, const StaggeredGrid& fine,
                        const StaggeredGrid& coarse) {
  require_refinement(coarse, fine);
  require_cell(f, fine);
  CellField out(coarse);
  for (int j = 0; j < coarse.ny; ++j)
    for (int i = 0; i < coarse.nx; ++i)
      out(i, j) = 0.25 * (f(2 * i, 2 * j) + f(2 * i + 1, 2 * j) +
                          f(2 * i, 2 * j + 1) + f(2 * i + 1, 2 * j + 1));
  return out;
}

XFaceField restrict_xface(const XFaceField& f, const StaggeredGrid& fine,
                          const StaggeredGrid& coarse) {
  require_refinement(coarse, fine);
  require_xface(f, fine);
  XFaceField out(coarse);
  for (int j = 0; j < coarse.ny; ++j)
    for (int i = 0; i <= coarse.nx; ++i)
      out(i, j) = 0.5 * (f(2 * i, 2 * j) + f(2 * i, 2 * j + 1));
  return out;
}

YFaceField restrict_yface(const YFaceField& f, const StaggeredGrid& fine,
                          const StaggeredGrid& coarse) {
  require_refinement(coarse, fine);
  require_yface(f, fine);
  YFaceField out(coarse);
  for (int j = 0; j <= coarse.ny; ++j)
    for (int i = 0; i < coarse.nx; ++i)
      out(i, j) = 0.5 * (f(2 * i, 2 * j) + f(2 * i + 1, 2 * j));
  return out;
}

CornerField restrict_corner(const CornerField& f, const StaggeredGrid& fine,
                            const StaggeredGrid& coarse) {
  require_refinement(coarse, fine);
  require_corner(f, fine);
  CornerField out(coarse);
  for (int j = 0; j <= coarse.ny; ++j)
    for (int i = 0; i <= coarse.nx; ++i)
      out(i, j) = f(2 * i, 2 * j);
  return out;
}

ChnsState restrict_state(const ChnsState& f, const StaggeredGrid& fine,
                         const StaggeredGrid& coarse) {
  ChnsState out(coarse);
  out.Z = restrict_cell(f.Z, fine, coarse);
  out.W = restrict_cell(f.W, fine, coarse);
  out.P = restrict_cell(f.P, fine, coarse);
  out.U1 = restrict_xface(f.U1, fine, coarse);
  out.U2 = restrict_yface(f.U2, fine, coarse);
  out.Zprev = restrict_cell(f.Zprev, fine, coarse);
  out.U1prev = restrict_xface(f.U1prev, fine, coarse);
  out.U2prev = restrict_yface(f.U2prev, fine, coarse);
  out.R = f.R;
  out.t = f.t;
  return out;
}

NormKind default_norm(Quantity q) {
  switch (q) {
    case Quantity::W:
    case Quantity::DW:
    case Quantity::P:
      return NormKind::two2;
    case Quantity::R:
      return NormKind::scalar_inf;
    default:
      return NormKind::inf2;
  }
}

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::Z: return "Z";
    case Quantity::DZ: return "DZ";
    case Quantity::R: return "R";
    case Quantity::W: return "W";
    case Quantity::DW: return "DW";
    case Quantity::U: return "U";
    case Quantity::dxU1: return "dxU1";
    case Quantity::DyU1: return "DyU1";
    case Quantity::P: return "P";
  }
  return "?";
}

StepSample sample_state(const ChnsState& s) {
  return StepSample{s.t, s.Z, s.R, s.U1, s.U2, s.W, s.P};
}

CauchyAccumulator::CauchyAccumulator(const StaggeredGrid& coarse,
                                     const StaggeredGrid& fine)
    : coarse_(coarse), fine_(fine) {
  require_refinement(coarse, fine);
}

namespace {

double cell_diff_sq(const CellField& c, const CellField& f, const StaggeredGrid& cg,
                    const StaggeredGrid& fg) {
  CellField d = c;
  d.axpy(-1.0, restrict_cell(f, fg, cg));
  return inner_M(d, d, cg);
}

double grad_diff_sq(const CellField& c, const CellField& f, const StaggeredGrid& cg,
                    const StaggeredGrid& fg) {
  CellField e = c;
  e.axpy(-1.0, restrict_cell(f, fg, cg));
  return grad_norm_sq_cell(e, cg);
}

}  // namespace

void CauchyAccumulator::add_step(int n, const StepSample& cs, const StepSample& fs,
                                 double dt) {
  if (n < 1) return;
  double sq[9] = {};

  sq[static_cast<int>(Quantity::Z)] = cell_diff_sq(cs.Z, fs.Z, coarse_, fine_);
  sq[static_cast<int>(Quantity::DZ)] = grad_diff_sq(cs.Z, fs.Z, coarse_, fine_);
  const double dR = cs.R - fs.R;
  sq[static_cast<int>(Quantity::R)] = dR * dR;
  sq[static_cast<int>(Quantity::W)] = cell_diff_sq(cs.Wmid, fs.Wmid, coarse_, fine_);
  sq[static_cast<int>(Quantity::DW)] = grad_diff_sq(cs.Wmid, fs.Wmid, coarse_, fine_);

  XFaceField du1 = cs.U1;
  du1.axpy(-1.0, restrict_xface(fs.U1, fine_, coarse_));
  YFaceField du2 = cs.U2;
  du2.axpy(-1.0, restrict_yface(fs.U2, fine_, coarse_));
  sq[static_cast<int>(Quantity::U)] =
      inner_TM(du1, du1, coarse_) + inner_MT(du2, du2, coarse_);

  const CellField dxe = dx_face_to_center(du1, coarse_);
  sq[static_cast<int>(Quantity::dxU1)] = inner_M(dxe, dxe, coarse_);

  const CornerField dye = Dy_xface_to_corner(du1, coarse_);
  sq[static_cast<int>(Quantity::DyU1)] = inner_Ty(dye, dye, coarse_);

  sq[static_cast<int>(Quantity::P)] = cell_diff_sq(cs.Pmid, fs.Pmid, coarse_, fine_);

  for (int q = 0; q < 9; ++q) {
    sup_[q] = std::max(sup_[q], std::sqrt(sq[q]));
    sumsq_[q] += dt * sq[q];
  }
}

double CauchyAccumulator::error(Quantity q, NormKind norm) const {
  const int idx = static_cast<int>(q);
  switch (norm) {
    case NormKind::inf2:
    case NormKind::scalar_inf:
      return sup_[idx];
    case NormKind::two2:
      return std::sqrt(sumsq_[idx]);
  }
  return 0.0;
}

double cauchy_error(const Trajectory& coarse, const Trajectory& fine, Quantity q,
                    NormKind norm) {
  if (coarse.steps.size() != fine.steps.size() || coarse.dt != fine.dt) {
    throw ShapeError("cauchy_error: trajectories must share dt and step count");
  }
  CauchyAccumulator acc(coarse.grid, fine.grid);
  for (size_t n = 0; n < coarse.steps.size(); ++n) {
    acc.add_step(static_cast<int>(n), coarse.steps[n], fine.steps[n], coarse.dt);
  }
  return acc.error(q, norm);
}

double cauchy_error(const Trajectory& coarse, const Trajectory& fine, Quantity q) {
  return cauchy_error(coarse, fine, q, default_norm(q));
}

std::vector<RateRow> rate_table(const std::vector<double>& hs,
                                const std::vector<std::vector<double>>& errors) {
  if (hs.size() != errors.size() || hs.empty()) {
    throw Error("rate_table: need one error row per level");
  }
  std::vector<RateRow> rows(hs.size());
  for (size_t l = 0; l < hs.size(); ++l) {
    rows[l].h = hs[l];
    rows[l].errors = errors[l];
    rows[l].rates.assign(errors[l].size(), std::nullopt);
    if (l > 0) {
      if (errors[l].size() != errors[l - 1].size()) {
        throw Error("rate_table: ragged error rows");
      }
      for (size_t q = 0; q < errors[l].size(); ++q) {
        if (errors[l][q] > 0.0 && errors[l - 1][q] > 0.0) {
          rows[l].rates[q] = std::log2(errors[l - 1][q] / errors[l][q]);
        }
      }
    }
  }
  return rows;
}

void write_rate_csv(const std::string& path, const std::vector<std::string>& names,
                    const std::vector<RateRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "h";
  for (const std::string& n : names) out << ",err_" << n << ",rate_" << n;
  out << "\n";
  char buf[64];
  for (const RateRow& row : rows) {
    std::snprintf(buf, sizeof buf, "%.10g", row.h);
    out << buf;
    for (size_t q = 0; q < row.errors.size(); ++q) {
      std::snprintf(buf, sizeof buf, "%.6e", row.errors[q]);
      out << "," << buf;
      if (row.rates[q].has_value()) {
        std::snprintf(buf, sizeof buf, "%.2f", *row.rates[q]);
        out << "," << buf;
      } else {
        out << ",";
      }
    }
    out << "\n";
  }
}

}  // namespace savmac
