/// @file experiments.hpp
/// @brief Experiment drivers: convergence study and the two bubble runs.

#pragma once

#include "savmac/config.hpp"
#include "savmac/diagnostics.hpp"
#include "savmac/stepper.hpp"

namespace savmac {

/// Samples the selected initial condition: Z at cell centers, velocity
/// components at their faces with hard wall zeros, R = sqrt(E1h(Z0)+delta),
/// W = P = 0, previous levels equal to the current ones.
ChnsState init_condition(const RunConfig& cfg, const StaggeredGrid& g);

/// Runs the configuration once, recording every step's sample.
Trajectory record_trajectory(const RunConfig& cfg);

/// Quadrature of |interpolated DZ| over the domain; proportional to the
/// interface length for a resolved profile.
double interface_perimeter_proxy(const CellField& Z, const StaggeredGrid& g);

/// y centroid of the phase with sign `phase` (+1 or -1):
/// (y, w)_M / (w, 1)_M with w = (1 + phase*Z)/2.
double phase_centroid_y(const CellField& Z, const StaggeredGrid& g, double phase);

struct ConvergeResult {
  std::vector<double> hs;                    ///< coarse spacing per Cauchy pair
  std::vector<std::vector<double>> errors;   ///< [pair][quantity], indexed by Quantity
  std::vector<RateRow> table;                ///< all nine quantities
};

/// Runs the level chain plus the final 2x refinement, accumulates the Cauchy
/// errors of all tracked quantities per pair, and writes table1/2/3 CSVs to
/// out_dir.  The finest grid streams through the accumulator and is never
/// stored.
ConvergeResult experiment_converge(const RunConfig& cfg);

struct BubbleResult {
  EnergyLedger ledger;
  std::vector<double> time;
  std::vector<double> perimeter;
  std::vector<double> centroid_y;  ///< centroid of the bubble phase
  double bubble_phase = 1.0;
};

BubbleResult experiment_square_bubble(const RunConfig& cfg);
BubbleResult experiment_buoyant_bubble(const RunConfig& cfg);

/// Plain run of the config's grid/IC/params with ledger and snapshots.
EnergyLedger experiment_custom(const RunConfig& cfg);

}  // namespace savmac
