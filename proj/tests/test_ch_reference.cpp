#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reference_ch.hpp"
#include "savmac/stepper.hpp"
#include "test_support.hpp"

using namespace savtest;

namespace {

Params ch_params() {
  Params p;
  p.mobility = 1e-3;
  p.lambda = 0.1;
  p.nu = 0.1;
  p.epsilon = std::sqrt(0.1);
  p.beta = 5.0;
  p.gamma = 1.0;
  p.dt = 1e-4;
  p.enable_capillary = false;  // keep the fluid exactly at rest
  return p;
}

}  // namespace

TEST_CASE("zero-velocity path reproduces the independent CH reference") {
  Params p = ch_params();
  const int n = 16;
  StaggeredGrid g(n, n);

  ChnsState s(g);
  const double pi = 3.14159265358979323846;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      s.Z(i, j) = std::cos(pi * g.x_center(i)) * std::cos(pi * g.y_center(j));
  s.Zprev = s.Z;
  s.R = initial_sav(s.Z, p, g);

  refch::Config rc;
  rc.nx = rc.ny = n;
  rc.h = g.h;
  rc.k = g.k;
  rc.mobility = p.mobility;
  rc.lambda = p.lambda;
  rc.eps_sq = p.eps_sq();
  rc.beta = p.beta;
  rc.delta = p.delta;
  rc.dt = p.dt;
  refch::ReferenceCh ref(rc);
  ref.set_initial(s.Z.raw());

  CHECK(ref.R() == doctest::Approx(s.R).epsilon(1e-14));

  const double mass0 = mean_M(s.Z, g) * g.area();
  double max_state_diff = 0.0;
  double max_R_diff = 0.0;
  double max_mass_drift = 0.0;
  double max_velocity = 0.0;

  ChnsState cur = s;
  for (int step = 0; step < 100; ++step) {
    StepResult r = advance(cur, p, g);
    ref.step();
    cur = std::move(r.next);

    double diff = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double d = cur.Z(i, j) - ref.Z()[ref.idx(i, j)];
        diff += g.h * g.k * d * d;
      }
    max_state_diff = std::max(max_state_diff, std::sqrt(diff));
    max_R_diff = std::max(max_R_diff, std::abs(cur.R - ref.R()));
    max_mass_drift =
        std::max(max_mass_drift, std::abs(mean_M(cur.Z, g) * g.area() - mass0));
    max_velocity =
        std::max(max_velocity, std::sqrt(velocity_l2_sq(cur.U1, cur.U2, g)));
  }

  CHECK(max_state_diff <= 1e-10);
  CHECK(max_R_diff <= 1e-10);
  CHECK(max_mass_drift <= 1e-10);
  CHECK(max_velocity <= 1e-12);  // nothing forces the fluid
}

TEST_CASE("gamma = 0 momentum operator is exactly mass plus diffusion") {
  Params p = ch_params();
  p.enable_capillary = true;
  StaggeredGrid g(6, 5);

  XFaceField ut1 = random_u1(g, rng());
  YFaceField ut2 = random_u2(g, rng());
  XFaceField u1 = random_u1(g, rng());
  YFaceField u2 = random_u2(g, rng());

  Params p0 = p;
  p0.gamma = 0.0;
  MomentumOperator H0(p0, g, ut1, ut2);  // extrapolated velocity ignored
  Params p1 = p;
  p1.gamma = 1.0;
  MomentumOperator H1(p1, g, XFaceField(g), YFaceField(g));

  XFaceField a1, b1;
  YFaceField a2, b2;
  H0.apply(u1, u2, a1, a2);
  H1.apply(u1, u2, b1, b2);
  for (size_t m = 0; m < a1.size(); ++m) CHECK(a1.data()[m] == b1.data()[m]);
  for (size_t m = 0; m < a2.size(); ++m) CHECK(a2.data()[m] == b2.data()[m]);
}

TEST_CASE("gamma = 0 coupled run keeps the energy identity") {
  Params p = ch_params();
  p.enable_capillary = true;
  p.gamma = 0.0;
  p.mode = StepMode::coupled;
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

  EnergyLedger ledger;
  run(s, p, g, {}, &ledger);
  for (const EnergyLedgerEntry& e : ledger) {
    CHECK(std::abs(e.residual) <= 1e-8 * std::max(1.0, std::abs(e.E)));
    CHECK(e.dE <= 1e-12 * std::max(1.0, std::abs(e.E)));
  }
}
