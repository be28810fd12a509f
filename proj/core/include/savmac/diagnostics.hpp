/// @file diagnostics.hpp
/// @brief Energy auditing, inter-grid restriction, Cauchy-error norms and
/// convergence-rate tables.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "savmac/model.hpp"

namespace savmac {

/// Builds one ledger entry from consecutive states: energies before/after,
/// the two dissipations M dt ||DW||^2 and nu dt ||DU||^2 at the midpoint,
/// the identity residual dE + diss_W + diss_U, and the phase mass.
EnergyLedgerEntry energy_audit(const ChnsState& prev, const ChnsState& next,
                               const CellField& Wmid, const XFaceField& U1mid,
                               const YFaceField& U2mid, const Params& p,
                               const StaggeredGrid& g, int step, int picard_iters);

// ---------------------------------------------------------------------------
// restriction from a 2x refinement to the coarse grid
// ---------------------------------------------------------------------------

/// Throws ShapeError unless fine is an exact 2x refinement of coarse.
void require_refinement(const StaggeredGrid& coarse, const StaggeredGrid& fine);

/// coarse cell value = mean of its 4 fine children.
CellField restrict_cell(const CellField& f, const StaggeredGrid& fine,
                        const StaggeredGrid& coarse);

/// coarse x-face value = mean of the 2 coincident fine x-faces.
XFaceField restrict_xface(const XFaceField& f, const StaggeredGrid& fine,
                          const StaggeredGrid& coarse);

/// coarse y-face value = mean of the 2 coincident fine y-faces.
YFaceField restrict_yface(const YFaceField& f, const StaggeredGrid& fine,
                          const StaggeredGrid& coarse);

/// coarse corners coincide with fine corners: point sample.
CornerField restrict_corner(const CornerField& f, const StaggeredGrid& fine,
                            const StaggeredGrid& coarse);

/// Field-wise restriction of a full state; R and t pass through.
ChnsState restrict_state(const ChnsState& f, const StaggeredGrid& fine,
                         const StaggeredGrid& coarse);

// ---------------------------------------------------------------------------
// Cauchy errors between trajectories at spacings h and h/2
// ---------------------------------------------------------------------------

/// max over steps of a spatial l2 norm (whole steps, q = 1), time-l2 of a
/// spatial l2 norm (half steps, q = 1/2), or max over steps of a scalar
/// difference.
enum class NormKind { inf2, two2, scalar_inf };

enum class Quantity { Z, DZ, R, W, DW, U, dxU1, DyU1, P };

/// Norm used for each tracked quantity: Z, DZ, R, U, dxU1, DyU1 at whole
/// steps in the sup norm; W, DW, P at half steps in the time-l2 norm.
NormKind default_norm(Quantity q);
std::string quantity_name(Quantity q);

/// State after step n plus the half-step quantities the step produced.
struct StepSample {
  double t = 0.0;
  CellField Z;
  double R = 0.0;
  XFaceField U1;
  YFaceField U2;
  CellField Wmid;  ///< W^{n-1/2}; empty at n = 0
  CellField Pmid;  ///< P^{n-1/2}; empty at n = 0
};

StepSample sample_state(const ChnsState& s);

/// A run's samples at steps 0..N on one grid, all sharing dt.
struct Trajectory {
  StaggeredGrid grid;
  double dt = 0.0;
  std::vector<StepSample> steps;
};

/// Streaming accumulator: feed matching (coarse, fine) samples step by step.
/// Primary fields are restricted to the coarse grid and derivative
/// quantities are the coarse-grid derivatives of that restricted difference
/// (e.g. e_DZ = ||D(Z_h - R Z_{h/2})||); D_y of the velocity difference at
/// the walls uses the half-cell one-sided closure, which is where the
/// degraded wall-normal rate shows up.
class CauchyAccumulator {
 public:
  CauchyAccumulator(const StaggeredGrid& coarse, const StaggeredGrid& fine);

  /// n is the step index; samples at n = 0 contribute nothing (whole-step
  /// norms start at n = 1, half-step ones at n = 1/2).
  void add_step(int n, const StepSample& coarse, const StepSample& fine, double dt);

  double error(Quantity q, NormKind norm) const;
  double error(Quantity q) const { return error(q, default_norm(q)); }

 private:
  StaggeredGrid coarse_, fine_;
  double sup_[9] = {};
  double sumsq_[9] = {};
};

/// Cauchy error between two stored trajectories; they must share dt and step
/// count, and fine must be the 2x refinement of coarse.
double cauchy_error(const Trajectory& coarse, const Trajectory& fine, Quantity q,
                    NormKind norm);
double cauchy_error(const Trajectory& coarse, const Trajectory& fine, Quantity q);

// ---------------------------------------------------------------------------
// rate tables
// ---------------------------------------------------------------------------

struct RateRow {
  double h = 0.0;
  std::vector<double> errors;
  std::vector<std::optional<double>> rates;  ///< empty on the first row
};

/// rates[i][q] = log2(err[i][q] / err[i+1][q]) aligned under each error
/// column; requires at least one level.
std::vector<RateRow> rate_table(const std::vector<double>& hs,
                                const std::vector<std::vector<double>>& errors);

/// CSV with columns h, err_1, rate_1, err_2, rate_2, ...; rates printed with
/// two decimals, blank where undefined.
void write_rate_csv(const std::string& path, const std::vector<std::string>& names,
                    const std::vector<RateRow>& rows);

}  // namespace savmac
