/// @file model.hpp
/// @brief Physical parameters, the split double-well potential, the scalar
/// auxiliary variable machinery, the discrete energy, and source terms.

#pragma once

#include <vector>

#include "savmac/grid.hpp"
#include "savmac/operators.hpp"

namespace savmac {

enum class StepMode { decoupled, coupled };

struct Params {
  double mobility = 1e-3;   ///< M > 0
  double lambda = 0.1;      ///< mixing coefficient > 0
  double nu = 0.1;          ///< viscosity > 0
  double gamma = 1.0;       ///< 1: Navier-Stokes convection on, 0: Stokes
  double epsilon = 0.31622776601683794;  ///< interface width (eps^2 = 0.1)
  double beta = 5.0;        ///< potential-splitting constant >= 0
  double delta = 0.0;       ///< SAV shift >= 0 (runtime guard applies at 0)
  double chi = 0.0;         ///< buoyancy coefficient (0: off)
  double phi0 = 0.0;        ///< buoyancy reference phase
  double dt = 1e-4;
  double t_final = 0.1;
  double cg_tol = 1e-11;       ///< relative Krylov tolerance
  double picard_tol = 1e-10;   ///< relative Picard tolerance (coupled mode)
  int cg_maxit_factor = 10;    ///< maxit = factor * nx * ny
  int picard_maxit = 50;
  StepMode mode = StepMode::decoupled;
  bool enable_capillary = true;  ///< off: momentum sees no phase forcing

  double eps_sq() const { return epsilon * epsilon; }
};

/// One time level of the discrete solution plus the previous level needed for
/// the second-order extrapolation.  W and P hold the most recent half-step
/// values.  Invariants: U1/U2 wall entries are 0, mean_M(P) = 0,
/// R > 0 whenever E1h + delta > 0.
struct ChnsState {
  CellField Z;
  CellField W;
  double R = 0.0;
  XFaceField U1;
  YFaceField U2;
  CellField P;
  CellField Zprev;
  XFaceField U1prev;
  YFaceField U2prev;
  double t = 0.0;

  ChnsState() = default;
  explicit ChnsState(const StaggeredGrid& g)
      : Z(g), W(g), U1(g), U2(g), P(g), Zprev(g), U1prev(g), U2prev(g) {}
};

struct EnergyLedgerEntry {
  int step = 0;
  double t = 0.0;
  double E = 0.0;         ///< total discrete energy after the step
  double dE = 0.0;        ///< E^{n+1} - E^n
  double diss_W = 0.0;    ///< M dt ||D W^{n+1/2}||^2
  double diss_U = 0.0;    ///< nu dt ||D U^{n+1/2}||^2
  double residual = 0.0;  ///< dE + diss_W + diss_U
  double mass = 0.0;      ///< (Z, 1)_M
  int picard_iters = 0;
};
using EnergyLedger = std::vector<EnergyLedgerEntry>;

/// F'(z) = z (z^2 - 1 - beta) / eps^2
double f_prime(double z, const Params& p);
CellField f_prime_field(const CellField& z, const Params& p);

/// E1h(Z) = sum h k (Z^2 - 1 - beta)^2 / (4 eps^2)
double e1_h(const CellField& Z, const Params& p, const StaggeredGrid& g);

struct SavCoefficients {
  CellField b;   ///< F'(Ztilde) / denom
  double denom;  ///< sqrt(E1h(Ztilde) + delta)
};

/// Throws NonpositiveSavDenominator when E1h + delta is not safely positive.
SavCoefficients sav_coefficients(const CellField& Ztilde, const Params& p,
                                 const StaggeredGrid& g);

/// 1/2 ||U||^2 + lambda (1/2 ||DZ||^2 + R^2) + (lambda beta / 2 eps^2) ||Z||^2_M
double energy_total(const ChnsState& s, const Params& p, const StaggeredGrid& g);

/// (P_x Wmid . D_x Ztilde, P_y Wmid . D_y Ztilde) at interior faces; walls 0.
void capillary_force(const CellField& Wmid, const CellField& Ztilde,
                     const StaggeredGrid& g, XFaceField& fx, YFaceField& fy);

/// y-momentum body force -chi (P_y Ztilde - phi0) at interior y-faces.
YFaceField buoyancy(const CellField& Ztilde, const Params& p, const StaggeredGrid& g);

/// R(0) = sqrt(E1h(Z0) + delta)
double initial_sav(const CellField& Z0, const Params& p, const StaggeredGrid& g);

}  // namespace savmac
