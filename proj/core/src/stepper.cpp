#include "savmac/stepper.hpp"

#include <cmath>
#include <string>

#include "savmac/diagnostics.hpp"

namespace savmac {

Extrapolated extrapolate(const ChnsState& s, const StaggeredGrid& g) {
  Extrapolated e{s.Z, s.U1, s.U2};
  e.Ztilde.scale(1.5);
  e.Ztilde.axpy(-0.5, s.Zprev);
  e.U1tilde.scale(1.5);
  e.U1tilde.axpy(-0.5, s.U1prev);
  e.U2tilde.scale(1.5);
  e.U2tilde.axpy(-0.5, s.U2prev);
  require_cell(e.Ztilde, g);
  return e;
}

CellField phase_convection(const XFaceField& U1half, const YFaceField& U2half,
                           const CellField& Ztilde, const StaggeredGrid& g) {
  CellField out =
      Px_xface_to_center(hadamard(U1half, Dx_center_to_face(Ztilde, g)), g);
  out.axpy(1.0, Py_yface_to_center(hadamard(U2half, Dy_center_to_face(Ztilde, g)), g));
  return out;
}

ChStepResult ch_step(const ChnsState& s, const XFaceField& U1half,
                     const YFaceField& U2half, const CellField& Ztilde,
                     const Params& p, const StaggeredGrid& g) {
  const SavCoefficients sav = sav_coefficients(Ztilde, p, g);
  const CellField& b = sav.b;
  const CellField Lb = laplace_neumann(b, g);

  const double ml = p.mobility * p.lambda;
  const CellField LZ = laplace_neumann(s.Z, g);
  const CellField LLZ = laplace_neumann(LZ, g);

  // rhs for the increment S = Z^{n+1} - Z^n
  CellField rhs = LLZ;
  rhs.scale(-p.dt * ml);
  rhs.axpy(p.dt * ml * p.beta / p.eps_sq(), LZ);
  rhs.axpy(p.dt * ml * s.R, Lb);
  rhs.axpy(-p.dt, phase_convection(U1half, U2half, Ztilde, g));

  CellField gvec = Lb;
  gvec.scale(p.dt * ml);

  const ChCoreOperator core(p, g);
  const int maxit = p.cg_maxit_factor * g.nx * g.ny;
  ChStepResult out;
  const CellField S =
      sherman_morrison_solve(core, gvec, b, 0.25, rhs, p.cg_tol, maxit, &out.report);

  const double bS = inner_M(b, S, g);
  out.Rnew = s.R + 0.5 * bS;
  out.Rhalf = s.R + 0.25 * bS;

  CellField Zmid = s.Z;
  Zmid.axpy(0.5, S);
  out.Znew = s.Z;
  out.Znew.axpy(1.0, S);

  out.Wmid = laplace_neumann(Zmid, g);
  out.Wmid.scale(-p.lambda);
  out.Wmid.axpy(p.lambda * p.beta / p.eps_sq(), Zmid);
  out.Wmid.axpy(p.lambda * out.Rhalf, b);
  return out;
}

NsStepResult ns_step(const ChnsState& s, const CellField& Wmid,
                     const CellField& Ztilde, const Params& p,
                     const StaggeredGrid& g) {
  const Extrapolated ex = extrapolate(s, g);
  const MomentumOperator H(p, g, ex.U1tilde, ex.U2tilde);

  // rhs_u = U^n/dt + (nu/2) Lap U^n - (gamma/4) C(Ut) U^n + forcing
  XFaceField rhs1;
  YFaceField rhs2;
  mac_laplacian(s.U1, s.U2, g, rhs1, rhs2);
  rhs1.scale(0.5 * p.nu);
  rhs2.scale(0.5 * p.nu);
  rhs1.axpy(1.0 / p.dt, s.U1);
  rhs2.axpy(1.0 / p.dt, s.U2);
  if (p.gamma != 0.0) {
    XFaceField c1;
    YFaceField c2;
    momentum_convection(ex.U1tilde, ex.U2tilde, s.U1, s.U2, g, c1, c2);
    rhs1.axpy(-0.25 * p.gamma, c1);
    rhs2.axpy(-0.25 * p.gamma, c2);
  }
  if (p.enable_capillary) {
    XFaceField fx;
    YFaceField fy;
    capillary_force(Wmid, Ztilde, g, fx, fy);
    rhs1.axpy(1.0, fx);
    rhs2.axpy(1.0, fy);
  }
  if (p.chi != 0.0) {
    rhs2.axpy(1.0, buoyancy(Ztilde, p, g));
  }

  CellField rhs_div = divergence(s.U1, s.U2, g);
  rhs_div.scale(-1.0);

  const int maxit = p.cg_maxit_factor * g.nx * g.ny;
  const StokesGuess guess{&s.U1, &s.U2, &s.P};
  StokesResult st = stokes_saddle_solve(H, rhs1, rhs2, rhs_div, p.cg_tol, maxit, guess);
  return NsStepResult{std::move(st.U1), std::move(st.U2), std::move(st.P), st.report};
}

namespace {

ChnsState assemble_next(const ChnsState& s, const Params& p, ChStepResult&& ch,
                        NsStepResult&& ns) {
  ChnsState next;
  next.Z = std::move(ch.Znew);
  next.W = std::move(ch.Wmid);
  next.R = ch.Rnew;
  next.U1 = std::move(ns.U1new);
  next.U2 = std::move(ns.U2new);
  next.P = std::move(ns.Pmid);
  next.Zprev = s.Z;
  next.U1prev = s.U1;
  next.U2prev = s.U2;
  next.t = s.t + p.dt;
  return next;
}

}  // namespace

StepResult decoupled_step(const ChnsState& s, const Params& p, const StaggeredGrid& g) {
  const Extrapolated ex = extrapolate(s, g);
  ChStepResult ch = ch_step(s, ex.U1tilde, ex.U2tilde, ex.Ztilde, p, g);
  NsStepResult ns = ns_step(s, ch.Wmid, ex.Ztilde, p, g);
  return StepResult{assemble_next(s, p, std::move(ch), std::move(ns)), 1};
}

StepResult coupled_step(const ChnsState& s, const Params& p, const StaggeredGrid& g) {
  const Extrapolated ex = extrapolate(s, g);
  XFaceField U1half = ex.U1tilde;
  YFaceField U2half = ex.U2tilde;

  for (int iter = 1; iter <= p.picard_maxit; ++iter) {
    ChStepResult ch = ch_step(s, U1half, U2half, ex.Ztilde, p, g);
    NsStepResult ns = ns_step(s, ch.Wmid, ex.Ztilde, p, g);

    XFaceField U1next = s.U1;
    U1next.axpy(1.0, ns.U1new);
    U1next.scale(0.5);
    YFaceField U2next = s.U2;
    U2next.axpy(1.0, ns.U2new);
    U2next.scale(0.5);

    XFaceField d1 = U1next;
    d1.axpy(-1.0, U1half);
    YFaceField d2 = U2next;
    d2.axpy(-1.0, U2half);
    const double diff = std::sqrt(velocity_l2_sq(d1, d2, g));
    const double scale = std::max(1.0, std::sqrt(velocity_l2_sq(U1half, U2half, g)));

    U1half = std::move(U1next);
    U2half = std::move(U2next);

    if (diff <= p.picard_tol * scale) {
      return StepResult{assemble_next(s, p, std::move(ch), std::move(ns)), iter};
    }
  }
  throw PicardNoConvergence(
      "coupled_step: Picard iteration did not converge in " +
          std::to_string(p.picard_maxit) + " iterations",
      p.picard_maxit);
}

StepResult advance(const ChnsState& s, const Params& p, const StaggeredGrid& g) {
  return p.mode == StepMode::coupled ? coupled_step(s, p, g)
                                     : decoupled_step(s, p, g);
}

int step_count(const Params& p) {
  if (p.dt <= 0.0) throw ValidationError("dt", "must be positive");
  if (p.t_final < 0.0) throw ValidationError("t_final", "must be nonnegative");
  const double ratio = p.t_final / p.dt;
  const long long n = std::llround(ratio);
  if (std::abs(ratio - static_cast<double>(n)) > 1e-8 * std::max(1.0, ratio)) {
    throw ValidationError("t_final", "must be an integer multiple of dt");
  }
  return static_cast<int>(n);
}

ChnsState run(const ChnsState& init, const Params& p, const StaggeredGrid& g,
              const std::vector<Observer>& observers, EnergyLedger* ledger) {
  const int n_steps = step_count(p);
  ChnsState state = init;
  for (int step = 1; step <= n_steps; ++step) {
    StepResult r = advance(state, p, g);
    XFaceField U1mid = state.U1;
    U1mid.axpy(1.0, r.next.U1);
    U1mid.scale(0.5);
    YFaceField U2mid = state.U2;
    U2mid.axpy(1.0, r.next.U2);
    U2mid.scale(0.5);
    EnergyLedgerEntry entry = energy_audit(state, r.next, r.next.W, U1mid, U2mid,
                                           p, g, step, r.picard_iters);
    if (ledger) ledger->push_back(entry);
    state = std::move(r.next);
    for (const Observer& obs : observers) obs(step, state.t, state, entry);
  }
  return state;
}

}  // namespace savmac
