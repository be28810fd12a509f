#include "savmac/model.hpp"

#include <cmath>
#include <limits>

namespace savmac {

double f_prime(double z, const Params& p) {
  return z * (z * z - 1.0 - p.beta) / p.eps_sq();
}

CellField f_prime_field(const CellField& z, const Params& p) {
  CellField out = z;
  const double ie2 = 1.0 / p.eps_sq();
  const double c = 1.0 + p.beta;
  for (size_t n = 0; n < out.size(); ++n) {
    const double v = z.data()[n];
    out.data()[n] = v * (v * v - c) * ie2;
  }
  return out;
}

double e1_h(const CellField& Z, const Params& p, const StaggeredGrid& g) {
  require_cell(Z, g);
  const double c = 1.0 + p.beta;
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double w = Z(i, j) * Z(i, j) - c;
      s += w * w;
    }
  }
  return s * g.h * g.k / (4.0 * p.eps_sq());
}

SavCoefficients sav_coefficients(const CellField& Ztilde, const Params& p,
                                 const StaggeredGrid& g) {
  // 1e-24 catches states at the well bottom up to round-off (E1h then sits
  // near (a few ulps)^2) without ever firing for a physically separated state.
  const double e1 = e1_h(Ztilde, p, g) + p.delta;
  if (e1 <= 1e-24) {
    throw NonpositiveSavDenominator(
        "E1h + delta is not positive; use delta > 0 for states at the well bottom");
  }
  SavCoefficients out{f_prime_field(Ztilde, p), std::sqrt(e1)};
  out.b.scale(1.0 / out.denom);
  return out;
}

double energy_total(const ChnsState& s, const Params& p, const StaggeredGrid& g) {
  const double kinetic = 0.5 * velocity_l2_sq(s.U1, s.U2, g);
  const double grad = 0.5 * grad_norm_sq_cell(s.Z, g);
  const double quad = 0.5 * p.beta / p.eps_sq() * inner_M(s.Z, s.Z, g);
  return kinetic + p.lambda * (grad + s.R * s.R + quad);
}

void capillary_force(const CellField& Wmid, const CellField& Ztilde,
                     const StaggeredGrid& g, XFaceField& fx, YFaceField& fy) {
  fx = hadamard(Px_center_to_xface(Wmid, g), Dx_center_to_face(Ztilde, g));
  fy = hadamard(Py_center_to_yface(Wmid, g), Dy_center_to_face(Ztilde, g));
}

YFaceField buoyancy(const CellField& Ztilde, const Params& p, const StaggeredGrid& g) {
  YFaceField out = Py_center_to_yface(Ztilde, g);
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = -p.chi * (out(i, j) - p.phi0);
  return out;
}

double initial_sav(const CellField& Z0, const Params& p, const StaggeredGrid& g) {
  return std::sqrt(e1_h(Z0, p, g) + p.delta);
}

}  // namespace savmac
