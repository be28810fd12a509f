/// @file stepper.hpp
/// @brief One full SAV/CN-MAC time step: phase block, momentum/pressure
/// block, their Picard coupling, and the time loop.
///
/// The phase block is reduced to a single symmetric solve with a rank-one
/// correction.  Writing S = Z^{n+1} - Z^n and b the normalized potential
/// derivative at the extrapolated phase, substituting the auxiliary-variable
/// update and the chemical potential into the phase equation gives
///
///   A S - (dt M lambda / 4) (b, S)_M L b = rhs,
///   A S = S + (dt M lambda / 2) L^2 S - (dt M lambda beta / 2 eps^2) L S,
///   rhs = dt [ -M lambda L^2 Z^n + (M lambda beta / eps^2) L Z^n
///              + M lambda R^n L b - conv ],
///
/// i.e. sherman_morrison_solve with gamma0 = 1/4 and g = dt M lambda L b.
/// This closed form is validated against a dense solve of the unreduced
/// (Z, W, R) block system in the test suite.

#pragma once

#include <functional>

#include "savmac/model.hpp"
#include "savmac/solvers.hpp"

namespace savmac {

/// Z~^{n+1/2} = (3 Z^n - Z^{n-1})/2 and likewise per velocity component.
/// At n = 0 the stored previous level equals the current one, so the
/// extrapolation degenerates to the initial data.
struct Extrapolated {
  CellField Ztilde;
  XFaceField U1tilde;
  YFaceField U2tilde;
};
Extrapolated extrapolate(const ChnsState& s, const StaggeredGrid& g);

/// P_x(U1 . D_x Ztilde) + P_y(U2 . D_y Ztilde) at cell centers, with
/// Neumann-zero boundary face gradients.
CellField phase_convection(const XFaceField& U1half, const YFaceField& U2half,
                           const CellField& Ztilde, const StaggeredGrid& g);

struct ChStepResult {
  CellField Znew;
  CellField Wmid;
  double Rnew = 0.0;
  double Rhalf = 0.0;
  SolverReport report;
};

/// Advances the phase block given the midpoint velocity to use in the
/// convection term (extrapolated in decoupled mode, Picard iterate in
/// coupled mode).
ChStepResult ch_step(const ChnsState& s, const XFaceField& U1half,
                     const YFaceField& U2half, const CellField& Ztilde,
                     const Params& p, const StaggeredGrid& g);

struct NsStepResult {
  XFaceField U1new;
  YFaceField U2new;
  CellField Pmid;
  SolverReport report;
};

/// Advances the momentum/pressure block given the half-step chemical
/// potential; solves H U^{n+1} + G P = rhs with divergence(U^{n+1}) =
/// -divergence(U^n) so the midpoint is discretely divergence free.
NsStepResult ns_step(const ChnsState& s, const CellField& Wmid,
                     const CellField& Ztilde, const Params& p,
                     const StaggeredGrid& g);

struct StepResult {
  ChnsState next;
  int picard_iters = 1;
};

/// One decoupled step: phase block with the extrapolated velocity, then the
/// momentum block.  Identical to the first Picard iterate of coupled_step.
StepResult decoupled_step(const ChnsState& s, const Params& p, const StaggeredGrid& g);

/// Picard (block Gauss-Seidel) iteration on the midpoint velocity until
/// ||Uhalf_{k+1} - Uhalf_k|| <= picard_tol max(1, ||Uhalf_k||); the fixed
/// point satisfies the fully coupled scheme and hence the discrete energy
/// identity to tolerance.  Throws PicardNoConvergence after picard_maxit.
StepResult coupled_step(const ChnsState& s, const Params& p, const StaggeredGrid& g);

/// Dispatches on p.mode.
StepResult advance(const ChnsState& s, const Params& p, const StaggeredGrid& g);

/// Called after every step.  Observers must not mutate the state.
using Observer =
    std::function<void(int step, double t, const ChnsState& state,
                       const EnergyLedgerEntry& entry)>;

/// Advances round(t_final/dt) steps (validated to be integral) in the mode
/// selected by p, building the energy ledger and invoking the observers.
ChnsState run(const ChnsState& init, const Params& p, const StaggeredGrid& g,
              const std::vector<Observer>& observers = {},
              EnergyLedger* ledger = nullptr);

/// Number of steps implied by p.t_final/p.dt; throws ValidationError when it
/// is not an integer.
int step_count(const Params& p);

}  // namespace savmac
