/// @file solvers.hpp
/// @brief Matrix-free Krylov solvers for the two implicit blocks: the phase
/// solve (fourth-order constant-coefficient core plus a rank-one term) and
/// the generalized Stokes saddle-point system.

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "savmac/grid.hpp"
#include "savmac/model.hpp"
#include "savmac/operators.hpp"

namespace savmac {

struct SolverReport {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// A map between flat coefficient vectors, with declared symmetry metadata.
/// Declared-symmetric operators are audited against random probes in the
/// test suite.
struct LinearOperator {
  std::function<void(const std::vector<double>&, std::vector<double>&)> apply;
  int size = 0;
  bool symmetric = false;
};

/// Conjugate gradients; requires a symmetric positive (semi)definite operator
/// with range-compatible rhs.  Solves to ||A x - rhs|| <= tol ||rhs||.
/// When x arrives with matching size it is taken as the initial guess,
/// otherwise the iteration starts from zero.  Throws NoConvergence after
/// maxit.
SolverReport cg_solve(const LinearOperator& A, const std::vector<double>& rhs,
                      std::vector<double>& x, double tol, int maxit);

/// BiCGStab for the nonsymmetric momentum operator (gamma = 1 with a nonzero
/// extrapolated velocity).
SolverReport bicgstab_solve(const LinearOperator& A, const std::vector<double>& rhs,
                            std::vector<double>& x, double tol, int maxit);

/// CG when the operator declares itself symmetric, BiCGStab otherwise.
SolverReport krylov_solve(const LinearOperator& A, const std::vector<double>& rhs,
                          std::vector<double>& x, double tol, int maxit);

// ---------------------------------------------------------------------------
// phase block
// ---------------------------------------------------------------------------

/// A z = z + (dt M lambda / 2) L(L z) - (dt M lambda beta / 2 eps^2) L z with
/// L the Neumann Laplacian.  Symmetric positive definite: (A z, z) >= ||z||^2.
class ChCoreOperator {
 public:
  ChCoreOperator(const Params& p, const StaggeredGrid& g);

  CellField apply(const CellField& z) const;
  LinearOperator as_linear_operator() const;
  const StaggeredGrid& grid() const { return *g_; }

 private:
  const StaggeredGrid* g_;
  double c_biharm_;  // dt M lambda / 2
  double c_lap_;     // dt M lambda beta / (2 eps^2)
};

/// Solves  A z - gamma0 (b, z)_{l2,M} g = rhs  by two core CG solves and the
/// rank-one update.  The denominator 1 - gamma0 (b, x2)_M is provably >= 1
/// for the scheme's signs; a vanishing value throws
/// SingularRankOneDenominator.
CellField sherman_morrison_solve(const ChCoreOperator& core, const CellField& gvec,
                                 const CellField& bvec, double gamma0,
                                 const CellField& rhs, double tol, int maxit,
                                 SolverReport* report = nullptr);

// ---------------------------------------------------------------------------
// momentum / pressure block
// ---------------------------------------------------------------------------

/// Flat indexing of the velocity unknowns: interior x-faces
/// (i = 1..nx-1, j = 0..ny-1) first, then interior y-faces
/// (i = 0..nx-1, j = 1..ny-1).  Wall entries always unpack to zero.
struct VelocityDofs {
  explicit VelocityDofs(const StaggeredGrid& g);
  int n_u1, n_u2, total;
  const StaggeredGrid* g;

  void pack(const XFaceField& u1, const YFaceField& u2, std::vector<double>& x) const;
  /// Reuses correctly shaped outputs (their wall entries are already zero and
  /// are never written); allocates otherwise.
  void unpack(const std::vector<double>& x, XFaceField& u1, YFaceField& u2) const;
};

/// H U = U/dt - (nu/2) Lap_mac U + (gamma/4) C(Utilde) U where Lap_mac is the
/// MAC velocity Laplacian with the half-cell wall closure and C is the
/// four-term skew convection form; (C(Utilde) V, V)_{l2} = 0 exactly, so
/// (H V, V) >= ||V||^2 / dt.
class MomentumOperator {
 public:
  MomentumOperator(const Params& p, const StaggeredGrid& g,
                   const XFaceField& U1tilde, const YFaceField& U2tilde);

  /// Allocates fresh outputs.
  void apply(const XFaceField& u1, const YFaceField& u2,
             XFaceField& out1, YFaceField& out2) const;
  /// Reuses correctly shaped outputs; the hot path inside the Krylov loops.
  void apply_into(const XFaceField& u1, const YFaceField& u2,
                  XFaceField& out1, YFaceField& out2) const;
  /// The returned operator owns a scratch workspace: one instance must not
  /// be applied concurrently, distinct instances are independent.
  LinearOperator as_linear_operator(const VelocityDofs& dofs) const;

  /// true when gamma = 0 or the extrapolated velocity vanishes
  bool symmetric() const { return symmetric_; }
  const StaggeredGrid& grid() const { return *g_; }

 private:
  const StaggeredGrid* g_;
  Params p_;
  XFaceField Ut1_;
  YFaceField Ut2_;
  CornerField Ut2_corner_;  ///< P_x Ut2, fixed over the solve
  CornerField Ut1_corner_;  ///< P_y Ut1, fixed over the solve
  bool symmetric_ = false;
};

/// MAC velocity Laplacian (D_x d_x + d_y D_y for u1 and mirrored for u2) with
/// the Dirichlet half-cell wall closure; exposed for tests and the step rhs.
void mac_laplacian(const XFaceField& u1, const YFaceField& u2, const StaggeredGrid& g,
                   XFaceField& out1, YFaceField& out2);

/// The four-term convection form of the momentum equations, linear in (u1,u2)
/// for fixed (Ut1, Ut2); exposed for the skew-symmetry tests and the step rhs.
void momentum_convection(const XFaceField& Ut1, const YFaceField& Ut2,
                         const XFaceField& u1, const YFaceField& u2,
                         const StaggeredGrid& g, XFaceField& out1, YFaceField& out2);

struct StokesResult {
  XFaceField U1;
  YFaceField U2;
  CellField P;  ///< mean zero
  SolverReport report;
};

/// Optional initial guesses for the velocity and pressure unknowns; the time
/// stepper passes the previous level to warm-start the Krylov iterations.
struct StokesGuess {
  const XFaceField* u1 = nullptr;
  const YFaceField* u2 = nullptr;
  const CellField* p = nullptr;
};

/// Solves H U + G P = rhs_u (interior faces), divergence(U) = rhs_div,
/// mean(P) = 0, by Krylov iteration on the pressure Schur complement
/// -div H^{-1} grad; inner solves run at 0.01x the outer tolerance.
/// rhs_div must have (numerically) zero mean.
StokesResult stokes_saddle_solve(const MomentumOperator& H, const XFaceField& rhs_u1,
                                 const YFaceField& rhs_u2, const CellField& rhs_div,
                                 double tol, int maxit,
                                 const StokesGuess& guess = {});

}  // namespace savmac
