#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dense_oracles.hpp"

using namespace savtest;

namespace {

Params params_51() {
  Params p;
  p.mobility = 1e-3;
  p.lambda = 0.1;
  p.nu = 0.1;
  p.epsilon = std::sqrt(0.1);
  p.beta = 5.0;
  p.gamma = 1.0;
  p.dt = 1e-4;
  return p;
}

/// stationary state at the well bottom; needs delta > 0
ChnsState well_state(const StaggeredGrid& g, const Params& p) {
  ChnsState s(g);
  s.Z.fill(std::sqrt(1.0 + p.beta));
  s.Zprev = s.Z;
  s.R = initial_sav(s.Z, p, g);
  return s;
}

ChnsState random_smooth_state(const StaggeredGrid& g, const Params& p) {
  ChnsState s(g);
  s.Z = smooth_cell(g, rng());
  s.Zprev = s.Z;
  s.U1 = random_u1(g, rng());
  s.U1.scale(0.1);
  s.U2 = random_u2(g, rng());
  s.U2.scale(0.1);
  s.U1prev = s.U1;
  s.U2prev = s.U2;
  s.R = initial_sav(s.Z, p, g);
  return s;
}

}  // namespace

TEST_CASE("extrapolation and the startup convention") {
  StaggeredGrid g(4, 4);
  ChnsState s(g);
  s.Z = random_cell(g, rng());
  s.Zprev = s.Z;
  s.U1 = random_u1(g, rng());
  s.U1prev = s.U1;
  s.U2 = random_u2(g, rng());
  s.U2prev = s.U2;

  Extrapolated e = extrapolate(s, g);
  for (size_t n = 0; n < e.Ztilde.size(); ++n)
    CHECK(e.Ztilde.data()[n] == doctest::Approx(s.Z.data()[n]).epsilon(1e-15));

  s.Zprev = random_cell(g, rng());
  e = extrapolate(s, g);
  for (size_t n = 0; n < e.Ztilde.size(); ++n)
    CHECK(e.Ztilde.data()[n] ==
          doctest::Approx(1.5 * s.Z.data()[n] - 0.5 * s.Zprev.data()[n]).epsilon(1e-14));
}

TEST_CASE("phase_convection basics") {
  StaggeredGrid g(6, 5);
  CellField zt = random_cell(g, rng());
  CellField out = phase_convection(XFaceField(g), YFaceField(g), zt, g);
  for (size_t n = 0; n < out.size(); ++n) CHECK(out.data()[n] == 0.0);

  XFaceField u1 = random_u1(g, rng());
  YFaceField u2 = random_u2(g, rng());
  zt.fill(3.3);
  out = phase_convection(u1, u2, zt, g);
  for (size_t n = 0; n < out.size(); ++n) CHECK(out.data()[n] == 0.0);

  // U1 = 1 at interior faces, linear phase: exact slope away from the
  // boundary columns (the wall face product vanishes there)
  const double slope = 1.7;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i)
      u1(i, j) = 1.0;
  u2 = YFaceField(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      zt(i, j) = slope * g.x_center(i);
  out = phase_convection(u1, u2, zt, g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 1; i < g.nx - 1; ++i)
      CHECK(out(i, j) == doctest::Approx(slope).epsilon(1e-13));
    CHECK(out(0, j) == doctest::Approx(0.5 * slope).epsilon(1e-13));
    CHECK(out(g.nx - 1, j) == doctest::Approx(0.5 * slope).epsilon(1e-13));
  }
}

TEST_CASE("ch_step holds the stationary well fixed") {
  Params p = params_51();
  p.delta = 0.5;
  StaggeredGrid g(6, 6);
  ChnsState s = well_state(g, p);
  const Extrapolated e = extrapolate(s, g);

  ChStepResult r = ch_step(s, s.U1, s.U2, e.Ztilde, p, g);
  const double zstar = std::sqrt(1.0 + p.beta);
  for (size_t n = 0; n < r.Znew.size(); ++n)
    CHECK(r.Znew.data()[n] == doctest::Approx(zstar).epsilon(1e-12));
  CHECK(r.Rnew == doctest::Approx(std::sqrt(p.delta)).epsilon(1e-12));
  const double wconst = p.lambda * p.beta / p.eps_sq() * zstar;
  for (size_t n = 0; n < r.Wmid.size(); ++n)
    CHECK(r.Wmid.data()[n] == doctest::Approx(wconst).epsilon(1e-12));
}

TEST_CASE("ch_step matches the dense monolithic block solve") {
  Params p = params_51();
  p.dt = 1e-2;  // large enough that every term matters
  StaggeredGrid g(4, 4);
  for (int rep = 0; rep < 25; ++rep) {
    ChnsState s = random_smooth_state(g, p);
    const Extrapolated e = extrapolate(s, g);
    ChStepResult got = ch_step(s, s.U1, s.U2, e.Ztilde, p, g);
    ChDense want = dense_ch_step(s, s.U1, s.U2, e.Ztilde, p, g);
    CHECK(field_rel_err(got.Znew, want.Znew) <= 1e-9);
    CHECK(field_rel_err(got.Wmid, want.Wmid) <= 1e-9);
    CHECK(got.Rnew == doctest::Approx(want.Rnew).epsilon(1e-9));
  }
}

TEST_CASE("ch_step residual contract and R update identity") {
  Params p = params_51();
  p.dt = 5e-3;
  StaggeredGrid g(6, 7);
  ChnsState s = random_smooth_state(g, p);
  const Extrapolated e = extrapolate(s, g);
  ChStepResult r = ch_step(s, s.U1, s.U2, e.Ztilde, p, g);

  // (Znew - Z)/dt - M L W + conv = 0 up to 10 * cg_tol relative
  CellField lhs = r.Znew;
  lhs.axpy(-1.0, s.Z);
  lhs.scale(1.0 / p.dt);
  lhs.axpy(-p.mobility, laplace_neumann(r.Wmid, g));
  lhs.axpy(1.0, phase_convection(s.U1, s.U2, e.Ztilde, g));
  CellField dz = r.Znew;
  dz.axpy(-1.0, s.Z);
  const double scale = std::max(1.0, norm_M(dz, g) / p.dt);
  CHECK(norm_M(lhs, g) <= 10 * p.cg_tol * scale);

  // R update is definitional
  const SavCoefficients sav = sav_coefficients(e.Ztilde, p, g);
  CHECK(r.Rnew - s.R == doctest::Approx(0.5 * inner_M(sav.b, dz, g)).epsilon(1e-12));
}

TEST_CASE("ch_step conserves mass without flow") {
  Params p = params_51();
  StaggeredGrid g(8, 8);
  ChnsState s = random_smooth_state(g, p);
  s.U1 = XFaceField(g);
  s.U2 = YFaceField(g);
  const Extrapolated e = extrapolate(s, g);
  ChStepResult r = ch_step(s, s.U1, s.U2, e.Ztilde, p, g);
  CellField one(g, 1.0);
  CHECK(std::abs(inner_M(r.Znew, one, g) - inner_M(s.Z, one, g)) <=
        10 * p.cg_tol * std::max(1.0, std::abs(inner_M(s.Z, one, g))));
}

TEST_CASE("ns_step: zero forcing keeps the fluid at rest") {
  Params p = params_51();
  StaggeredGrid g(5, 5);
  ChnsState s(g);
  s.Zprev = s.Z;
  CellField Wmid = random_cell(g, rng());
  CellField Zt(g, 0.9);  // constant phase: no capillary force
  NsStepResult r = ns_step(s, Wmid, Zt, p, g);
  CHECK(std::sqrt(velocity_l2_sq(r.U1new, r.U2new, g)) <= 1e-12);
  CHECK(norm_M(r.Pmid, g) <= 1e-12);
}

TEST_CASE("ns_step: gradient capillary forcing is absorbed by the pressure") {
  Params p = params_51();
  StaggeredGrid g(5, 4);
  ChnsState s(g);
  s.Zprev = s.Z;
  // Wmid = 1: the capillary force is exactly the discrete gradient of Ztilde
  CellField Wmid(g, 1.0);
  CellField Zt = smooth_cell(g, rng());
  NsStepResult r = ns_step(s, Wmid, Zt, p, g);
  CHECK(std::sqrt(velocity_l2_sq(r.U1new, r.U2new, g)) <= 1e-9);
  CellField want = Zt;
  project_mean_zero(want, g);
  CellField diff = r.Pmid;
  diff.axpy(-1.0, want);
  CHECK(norm_M(diff, g) <= 1e-9 * std::max(1.0, norm_M(want, g)));
}

TEST_CASE("ns_step matches the dense KKT oracle") {
  Params p = params_51();
  p.dt = 1e-2;
  StaggeredGrid g(4, 4);
  for (double gamma : {0.0, 1.0}) {
    p.gamma = gamma;
    for (int rep = 0; rep < 10; ++rep) {
      ChnsState s = random_smooth_state(g, p);
      s.U1prev = random_u1(g, rng());
      s.U2prev = random_u2(g, rng());
      CellField Wmid = smooth_cell(g, rng());
      const Extrapolated e = extrapolate(s, g);

      NsStepResult got = ns_step(s, Wmid, e.Ztilde, p, g);

      // assemble the identical right-hand side and solve the monolithic KKT
      MomentumOperator H(p, g, e.U1tilde, e.U2tilde);
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
        momentum_convection(e.U1tilde, e.U2tilde, s.U1, s.U2, g, c1, c2);
        rhs1.axpy(-0.25 * p.gamma, c1);
        rhs2.axpy(-0.25 * p.gamma, c2);
      }
      XFaceField fx;
      YFaceField fy;
      capillary_force(Wmid, e.Ztilde, g, fx, fy);
      rhs1.axpy(1.0, fx);
      rhs2.axpy(1.0, fy);
      CellField rhs_div = divergence(s.U1, s.U2, g);
      rhs_div.scale(-1.0);

      StokesDense want = dense_stokes(H, rhs1, rhs2, rhs_div, g);
      CHECK(field_rel_err(got.U1new, want.U1) <= 1e-9);
      CHECK(field_rel_err(got.U2new, want.U2) <= 1e-9);
      CHECK(field_abs_err(got.Pmid, want.P) <= 1e-9 * std::max(1.0, norm_M(want.P, g)));
    }
  }
}

TEST_CASE("coupled_step: stationary well is a one-iteration fixed point") {
  Params p = params_51();
  p.delta = 0.5;
  p.mode = StepMode::coupled;
  StaggeredGrid g(6, 6);
  ChnsState s = well_state(g, p);
  StepResult r = coupled_step(s, p, g);
  CHECK(r.picard_iters == 1);
  const double zstar = std::sqrt(1.0 + p.beta);
  for (size_t n = 0; n < r.next.Z.size(); ++n)
    CHECK(r.next.Z.data()[n] == doctest::Approx(zstar).epsilon(1e-11));
  CHECK(std::sqrt(velocity_l2_sq(r.next.U1, r.next.U2, g)) <= 1e-11);
}

TEST_CASE("decoupled step equals the first Picard iterate exactly") {
  Params p = params_51();
  StaggeredGrid g(5, 5);
  ChnsState s = random_smooth_state(g, p);

  StepResult dec = decoupled_step(s, p, g);
  Params p1 = p;
  p1.picard_tol = 1e30;  // accept the first iterate
  StepResult cou = coupled_step(s, p1, g);
  CHECK(cou.picard_iters == 1);
  for (size_t n = 0; n < dec.next.Z.size(); ++n)
    CHECK(dec.next.Z.data()[n] == cou.next.Z.data()[n]);
  for (size_t n = 0; n < dec.next.U1.size(); ++n)
    CHECK(dec.next.U1.data()[n] == cou.next.U1.data()[n]);
  CHECK(dec.next.R == cou.next.R);
}

TEST_CASE("Picard contraction strengthens as dt shrinks") {
  Params p = params_51();
  p.mode = StepMode::coupled;
  StaggeredGrid g(8, 8);
  ChnsState s(g);
  const double pi = 3.14159265358979323846;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      s.Z(i, j) = std::cos(pi * g.x_center(i)) * std::cos(pi * g.y_center(j));
  s.Zprev = s.Z;
  s.R = initial_sav(s.Z, p, g);

  p.dt = 1e-2;
  const int iters_large = coupled_step(s, p, g).picard_iters;
  p.dt = 1e-4;
  const int iters_small = coupled_step(s, p, g).picard_iters;
  CHECK(iters_small <= iters_large);
  CHECK(iters_small <= 3);
}

TEST_CASE("run: empty loop, fixed-point persistence, validation") {
  Params p = params_51();
  p.delta = 0.5;
  p.mode = StepMode::coupled;
  StaggeredGrid g(5, 5);
  ChnsState s = well_state(g, p);

  p.t_final = 0.0;
  ChnsState out = run(s, p, g);
  for (size_t n = 0; n < out.Z.size(); ++n) CHECK(out.Z.data()[n] == s.Z.data()[n]);

  p.t_final = 100 * p.dt;
  int observed = 0;
  EnergyLedger ledger;
  out = run(s, p, g,
            {[&](int, double, const ChnsState&, const EnergyLedgerEntry&) { ++observed; }},
            &ledger);
  CHECK(observed == 100);
  CHECK(ledger.size() == 100);
  const double zstar = std::sqrt(1.0 + p.beta);
  for (size_t n = 0; n < out.Z.size(); ++n)
    CHECK(std::abs(out.Z.data()[n] - zstar) <= 100 * 10 * p.cg_tol);
  for (const EnergyLedgerEntry& e : ledger)
    CHECK(std::abs(e.dE) <= 1e-10);

  p.t_final = 1.5 * p.dt;
  CHECK_THROWS_AS(run(s, p, g), ValidationError);
}

TEST_CASE("coupled_step throws PicardNoConvergence at an unreachable tolerance") {
  Params p = params_51();
  p.dt = 1e-2;
  p.picard_tol = 1e-18;  // below attainable accuracy
  p.picard_maxit = 2;
  StaggeredGrid g(6, 6);
  ChnsState s = random_smooth_state(g, p);
  CHECK_THROWS_AS(coupled_step(s, p, g), PicardNoConvergence);
}

TEST_CASE("decoupled step approaches the coupled step at third order in dt") {
  // Needs data on the constraint manifold: with div U0 != 0 the midpoint
  // constraint induces a dt-independent time-alternating component and the
  // mode gap drops to first order.  The stream-function field is
  // divergence free to round-off.
  Params p = params_51();
  StaggeredGrid g(8, 8);
  ChnsState s0(g);
  const double pi = 3.14159265358979323846;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      s0.Z(i, j) = std::cos(pi * g.x_center(i)) * std::cos(pi * g.y_center(j));
  s0.Zprev = s0.Z;
  stream_velocity(g, 0.02, s0.U1, s0.U2);
  s0.U1prev = s0.U1;
  s0.U2prev = s0.U2;
  s0.R = initial_sav(s0.Z, p, g);
  REQUIRE(norm_M(divergence(s0.U1, s0.U2, g), g) <= 1e-14);

  // branch at a fixed physical time, past the first-order startup step
  const double tstar = 0.08;
  auto one_step_gap = [&](double dt) {
    Params pd = p;
    pd.dt = dt;
    pd.mode = StepMode::coupled;
    ChnsState s = s0;
    const int nprep = static_cast<int>(std::llround(tstar / dt));
    for (int n = 0; n < nprep; ++n) s = coupled_step(s, pd, g).next;
    StepResult cou = coupled_step(s, pd, g);
    StepResult dec = decoupled_step(s, pd, g);
    CellField dz = dec.next.Z;
    dz.axpy(-1.0, cou.next.Z);
    XFaceField du1 = dec.next.U1;
    du1.axpy(-1.0, cou.next.U1);
    YFaceField du2 = dec.next.U2;
    du2.axpy(-1.0, cou.next.U2);
    return std::sqrt(inner_M(dz, dz, g) + velocity_l2_sq(du1, du2, g));
  };

  const double gap_h = one_step_gap(2e-2);
  const double gap_h2 = one_step_gap(1e-2);
  REQUIRE(gap_h > 1e-10);  // meaningfully above solver noise
  const double order = std::log2(gap_h / gap_h2);
  CHECK(order >= 2.7);
  CHECK(order <= 3.3);
}

TEST_CASE("decoupled energy stays bounded over a coarse large-dt run") {
  Params p = params_51();
  p.mode = StepMode::decoupled;
  p.dt = 1e-2;
  p.t_final = 50 * p.dt;
  StaggeredGrid g(8, 8);
  ChnsState s(g);
  const double pi = 3.14159265358979323846;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      s.Z(i, j) = std::cos(pi * g.x_center(i)) * std::cos(pi * g.y_center(j));
  s.Zprev = s.Z;
  s.R = initial_sav(s.Z, p, g);

  const double E0 = energy_total(s, p, g);
  EnergyLedger ledger;
  run(s, p, g, {}, &ledger);
  for (const EnergyLedgerEntry& e : ledger) CHECK(e.E <= 2.0 * E0);
}

TEST_CASE("midpoint divergence stays at solver tolerance along a run") {
  Params p = params_51();
  p.dt = 1e-3;
  p.t_final = 10 * p.dt;
  StaggeredGrid g(8, 8);
  ChnsState s(g);
  const double pi = 3.14159265358979323846;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      s.Z(i, j) = std::cos(pi * g.x_center(i)) * std::cos(pi * g.y_center(j));
  s.Zprev = s.Z;
  s.R = initial_sav(s.Z, p, g);

  ChnsState prev = s;
  std::vector<double> div_mid;
  run(s, p, g,
      {[&](int, double, const ChnsState& st, const EnergyLedgerEntry&) {
        XFaceField um = prev.U1;
        um.axpy(1.0, st.U1);
        um.scale(0.5);
        YFaceField vm = prev.U2;
        vm.axpy(1.0, st.U2);
        vm.scale(0.5);
        div_mid.push_back(norm_M(divergence(um, vm, g), g));
        prev = st;
      }});
  for (double d : div_mid) CHECK(d <= 1e-9);
}
