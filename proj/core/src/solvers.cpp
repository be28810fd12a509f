#include "savmac/solvers.hpp"

#include <cmath>
#include <string>

namespace savmac {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

SolverReport cg_solve(const LinearOperator& A, const std::vector<double>& rhs,
                      std::vector<double>& x, double tol, int maxit) {
  const size_t n = rhs.size();
  const bool warm = (x.size() == n);
  if (!warm) x.assign(n, 0.0);
  const double rhs_norm = nrm2(rhs);
  SolverReport rep;
  if (rhs_norm == 0.0) {
    x.assign(n, 0.0);
    rep.converged = true;
    return rep;
  }

  std::vector<double> r = rhs;
  std::vector<double> q(n);
  if (warm) {
    A.apply(x, q);
    for (size_t i = 0; i < n; ++i) r[i] -= q[i];
  }
  if (nrm2(r) <= tol * rhs_norm) {
    rep.converged = true;
    rep.relative_residual = nrm2(r) / rhs_norm;
    return rep;
  }
  std::vector<double> p = r;
  double rr = dot(r, r);
  const double stop = tol * rhs_norm;

  for (int it = 1; it <= maxit; ++it) {
    A.apply(p, q);
    const double pq = dot(p, q);
    if (pq <= 0.0) {
      throw NoConvergence("cg_solve: operator not positive definite on the Krylov space",
                          it, std::sqrt(rr) / rhs_norm);
    }
    const double alpha = rr / pq;
    for (size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (size_t i = 0; i < n; ++i) r[i] -= alpha * q[i];
    const double rr_new = dot(r, r);
    rep.iterations = it;
    rep.relative_residual = std::sqrt(rr_new) / rhs_norm;
    if (std::sqrt(rr_new) <= stop) {
      rep.converged = true;
      return rep;
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    for (size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  throw NoConvergence("cg_solve: no convergence in " + std::to_string(maxit) + " iterations",
                      rep.iterations, rep.relative_residual);
}

SolverReport bicgstab_solve(const LinearOperator& A, const std::vector<double>& rhs,
                            std::vector<double>& x, double tol, int maxit) {
  const size_t n = rhs.size();
  const bool warm = (x.size() == n);
  if (!warm) x.assign(n, 0.0);
  const double rhs_norm = nrm2(rhs);
  SolverReport rep;
  if (rhs_norm == 0.0) {
    x.assign(n, 0.0);
    rep.converged = true;
    return rep;
  }

  std::vector<double> r = rhs;
  if (warm) {
    std::vector<double> ax(n);
    A.apply(x, ax);
    for (size_t i = 0; i < n; ++i) r[i] -= ax[i];
    if (nrm2(r) <= tol * rhs_norm) {
      rep.converged = true;
      rep.relative_residual = nrm2(r) / rhs_norm;
      return rep;
    }
  }
  std::vector<double> r0 = r;
  std::vector<double> p(n, 0.0), v(n, 0.0), s(n), t(n);
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  const double stop = tol * rhs_norm;

  for (int it = 1; it <= maxit; ++it) {
    const double rho_new = dot(r0, r);
    if (rho_new == 0.0) {
      throw NoConvergence("bicgstab_solve: breakdown (rho = 0)", it, nrm2(r) / rhs_norm);
    }
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    for (size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    A.apply(p, v);
    alpha = rho / dot(r0, v);
    for (size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    if (nrm2(s) <= stop) {
      for (size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
      rep.iterations = it;
      rep.relative_residual = nrm2(s) / rhs_norm;
      rep.converged = true;
      return rep;
    }
    A.apply(s, t);
    const double tt = dot(t, t);
    if (tt == 0.0) {
      throw NoConvergence("bicgstab_solve: breakdown (t = 0)", it, nrm2(s) / rhs_norm);
    }
    omega = dot(t, s) / tt;
    for (size_t i = 0; i < n; ++i) x[i] += alpha * p[i] + omega * s[i];
    for (size_t i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
    rep.iterations = it;
    rep.relative_residual = nrm2(r) / rhs_norm;
    if (rep.relative_residual * rhs_norm <= stop) {
      rep.converged = true;
      return rep;
    }
    if (omega == 0.0) {
      throw NoConvergence("bicgstab_solve: breakdown (omega = 0)", it, rep.relative_residual);
    }
  }
  throw NoConvergence("bicgstab_solve: no convergence in " + std::to_string(maxit) + " iterations",
                      rep.iterations, rep.relative_residual);
}

SolverReport krylov_solve(const LinearOperator& A, const std::vector<double>& rhs,
                          std::vector<double>& x, double tol, int maxit) {
  return A.symmetric ? cg_solve(A, rhs, x, tol, maxit)
                     : bicgstab_solve(A, rhs, x, tol, maxit);
}

// ---------------------------------------------------------------------------
// phase block
// ---------------------------------------------------------------------------

ChCoreOperator::ChCoreOperator(const Params& p, const StaggeredGrid& g)
    : g_(&g),
      c_biharm_(0.5 * p.dt * p.mobility * p.lambda),
      c_lap_(0.5 * p.dt * p.mobility * p.lambda * p.beta / p.eps_sq()) {}

CellField ChCoreOperator::apply(const CellField& z) const {
  CellField lz = laplace_neumann(z, *g_);
  CellField out = laplace_neumann(lz, *g_);
  out.scale(c_biharm_);
  out.axpy(-c_lap_, lz);
  out.axpy(1.0, z);
  return out;
}

LinearOperator ChCoreOperator::as_linear_operator() const {
  const ChCoreOperator* self = this;
  const StaggeredGrid* g = g_;
  LinearOperator op;
  op.size = g->nx * g->ny;
  op.symmetric = true;
  op.apply = [self, g](const std::vector<double>& in, std::vector<double>& out) {
    CellField z(*g);
    z.raw() = in;
    out = self->apply(z).raw();
  };
  return op;
}

CellField sherman_morrison_solve(const ChCoreOperator& core, const CellField& gvec,
                                 const CellField& bvec, double gamma0,
                                 const CellField& rhs, double tol, int maxit,
                                 SolverReport* report) {
  const StaggeredGrid& g = core.grid();
  require_cell(gvec, g);
  require_cell(bvec, g);
  require_cell(rhs, g);

  LinearOperator A = core.as_linear_operator();
  std::vector<double> x1;
  SolverReport rep1 = cg_solve(A, rhs.raw(), x1, tol, maxit);
  CellField z(g);
  z.raw() = x1;

  SolverReport total = rep1;
  if (gamma0 != 0.0) {
    std::vector<double> x2;
    SolverReport rep2 = cg_solve(A, gvec.raw(), x2, tol, maxit);
    total.iterations += rep2.iterations;
    total.relative_residual = std::max(total.relative_residual, rep2.relative_residual);
    total.converged = rep1.converged && rep2.converged;

    CellField x2f(g);
    x2f.raw() = x2;
    const double denom = 1.0 - gamma0 * inner_M(bvec, x2f, g);
    if (std::abs(denom) < 1e-12) {
      throw SingularRankOneDenominator(
          "sherman_morrison_solve: rank-one denominator vanished (provably >= 1; "
          "this indicates a sign or assembly bug upstream)");
    }
    const double theta = inner_M(bvec, z, g) / denom;
    z.axpy(gamma0 * theta, x2f);
  }
  if (report) *report = total;
  return z;
}

// ---------------------------------------------------------------------------
// momentum / pressure block
// ---------------------------------------------------------------------------

VelocityDofs::VelocityDofs(const StaggeredGrid& grid) : g(&grid) {
  n_u1 = (grid.nx - 1) * grid.ny;
  n_u2 = grid.nx * (grid.ny - 1);
  total = n_u1 + n_u2;
}

void VelocityDofs::pack(const XFaceField& u1, const YFaceField& u2,
                        std::vector<double>& x) const {
  x.resize(total);
  size_t n = 0;
  for (int j = 0; j < g->ny; ++j)
    for (int i = 1; i < g->nx; ++i)
      x[n++] = u1(i, j);
  for (int j = 1; j < g->ny; ++j)
    for (int i = 0; i < g->nx; ++i)
      x[n++] = u2(i, j);
}

void VelocityDofs::unpack(const std::vector<double>& x, XFaceField& u1,
                          YFaceField& u2) const {
  if (u1.ni() != g->nx + 1 || u1.nj() != g->ny) u1 = XFaceField(*g);
  if (u2.ni() != g->nx || u2.nj() != g->ny + 1) u2 = YFaceField(*g);
  size_t n = 0;
  for (int j = 0; j < g->ny; ++j)
    for (int i = 1; i < g->nx; ++i)
      u1(i, j) = x[n++];
  for (int j = 1; j < g->ny; ++j)
    for (int i = 0; i < g->nx; ++i)
      u2(i, j) = x[n++];
}

namespace {

bool all_zero(const Field2D& f) {
  for (size_t n = 0; n < f.size(); ++n)
    if (f.data()[n] != 0.0) return false;
  return true;
}

void zero_wall_columns(XFaceField& f, const StaggeredGrid& g) {
  for (int j = 0; j < g.ny; ++j) {
    f(0, j) = 0.0;
    f(g.nx, j) = 0.0;
  }
}

void zero_wall_rows(YFaceField& f, const StaggeredGrid& g) {
  for (int i = 0; i < g.nx; ++i) {
    f(i, 0) = 0.0;
    f(i, g.ny) = 0.0;
  }
}

}  // namespace

void mac_laplacian(const XFaceField& u1, const YFaceField& u2, const StaggeredGrid& g,
                   XFaceField& out1, YFaceField& out2) {
  out1 = Dx_cell_to_xface(dx_face_to_center(u1, g), g);
  out1.axpy(1.0, dy_corner_to_xface(Dy_xface_to_corner(u1, g), g));
  zero_wall_columns(out1, g);

  out2 = Dy_cell_to_yface(dy_face_to_center(u2, g), g);
  out2.axpy(1.0, dx_corner_to_yface(Dx_yface_to_corner(u2, g), g));
  zero_wall_rows(out2, g);
}

void momentum_convection(const XFaceField& Ut1, const YFaceField& Ut2,
                         const XFaceField& u1, const YFaceField& u2,
                         const StaggeredGrid& g, XFaceField& out1, YFaceField& out2) {
  // Shared corner interpolants of the extrapolated velocity.
  const CornerField Ut2_corner = Px_yface_to_corner(Ut2, g);
  const CornerField Ut1_corner = Py_xface_to_corner(Ut1, g);

  // x momentum:
  //   Ut1 D_x(P_x u1) + P_x d_x(u1 Ut1)
  // + P_y(P_x Ut2 . D_y u1) + d_y(P_y u1 . P_x Ut2)
  out1 = hadamard(Ut1, Dx_cell_to_xface(Px_xface_to_center(u1, g), g));
  out1.axpy(1.0, Px_center_to_xface(dx_face_to_center(hadamard(u1, Ut1), g), g));
  out1.axpy(1.0, Py_corner_to_xface(hadamard(Ut2_corner, Dy_xface_to_corner(u1, g)), g));
  out1.axpy(1.0, dy_corner_to_xface(hadamard(Py_xface_to_corner(u1, g), Ut2_corner), g));
  zero_wall_columns(out1, g);

  // y momentum (mirror):
  //   P_x(P_y Ut1 . D_x u2) + d_x(P_y Ut1 . P_x u2)
  // + Ut2 D_y(P_y u2) + P_y(d_y(u2 Ut2))
  out2 = Px_corner_to_yface(hadamard(Ut1_corner, Dx_yface_to_corner(u2, g)), g);
  out2.axpy(1.0, dx_corner_to_yface(hadamard(Ut1_corner, Px_yface_to_corner(u2, g)), g));
  out2.axpy(1.0, hadamard(Ut2, Dy_cell_to_yface(Py_yface_to_center(u2, g), g)));
  out2.axpy(1.0, Py_center_to_yface(dy_face_to_center(hadamard(u2, Ut2), g), g));
  zero_wall_rows(out2, g);
}

MomentumOperator::MomentumOperator(const Params& p, const StaggeredGrid& g,
                                   const XFaceField& U1tilde, const YFaceField& U2tilde)
    : g_(&g), p_(p), Ut1_(U1tilde), Ut2_(U2tilde) {
  require_xface(Ut1_, g);
  require_yface(Ut2_, g);
  symmetric_ = (p_.gamma == 0.0) || (all_zero(Ut1_) && all_zero(Ut2_));
  if (!symmetric_) {
    Ut2_corner_ = Px_yface_to_corner(Ut2_, g);
    Ut1_corner_ = Py_xface_to_corner(Ut1_, g);
  }
}

void MomentumOperator::apply(const XFaceField& u1, const YFaceField& u2,
                             XFaceField& out1, YFaceField& out2) const {
  out1 = XFaceField(*g_);
  out2 = YFaceField(*g_);
  apply_into(u1, u2, out1, out2);
}

// Fused stencil loops: algebraically identical to mass - (nu/2) mac_laplacian
// + (gamma/4) momentum_convection; kept in sync by a round-off level test
// against the composed form.  This sits inside the nested Krylov loops, so
// it avoids the intermediate field allocations of the composed operators.
void MomentumOperator::apply_into(const XFaceField& u1, const YFaceField& u2,
                                  XFaceField& out1, YFaceField& out2) const {
  const StaggeredGrid& g = *g_;
  require_xface(u1, g);
  require_yface(u2, g);
  require_xface(out1, g);
  require_yface(out2, g);
  for (int j = 0; j < g.ny; ++j) {
    out1(0, j) = 0.0;
    out1(g.nx, j) = 0.0;
  }
  for (int i = 0; i < g.nx; ++i) {
    out2(i, 0) = 0.0;
    out2(i, g.ny) = 0.0;
  }

  const double idt = 1.0 / p_.dt;
  const double vx = 0.5 * p_.nu / (g.h * g.h);
  const double vy = 0.5 * p_.nu / (g.k * g.k);
  const double cg4 = 0.25 * p_.gamma;
  const int nx = g.nx, ny = g.ny;

  // x momentum at interior x-faces
  for (int j = 0; j < ny; ++j) {
    for (int i = 1; i < nx; ++i) {
      const double lap_x = u1(i + 1, j) - 2.0 * u1(i, j) + u1(i - 1, j);
      double lap_y;
      if (j == 0 && ny > 1) {
        lap_y = u1(i, 1) - 3.0 * u1(i, 0);
      } else if (j == ny - 1 && ny > 1) {
        lap_y = u1(i, ny - 2) - 3.0 * u1(i, ny - 1);
      } else {
        lap_y = u1(i, j + 1) - 2.0 * u1(i, j) + u1(i, j - 1);
      }
      double v = idt * u1(i, j) - vx * lap_x - vy * lap_y;

      if (!symmetric_) {
        // Ut1 D_x(P_x u1) + P_x d_x(u1 Ut1)
        const double t1 = Ut1_(i, j) * (u1(i + 1, j) - u1(i - 1, j)) / (2.0 * g.h);
        const double t2 = (u1(i + 1, j) * Ut1_(i + 1, j) -
                           u1(i - 1, j) * Ut1_(i - 1, j)) /
                          (2.0 * g.h);
        // corner factors at rows j and j+1: A = P_x Ut2, G = D_y u1, B = P_y u1
        const double A0 = Ut2_corner_(i, j);
        const double A1 = Ut2_corner_(i, j + 1);
        const double G0 = (j == 0) ? 2.0 * u1(i, 0) / g.k
                                   : (u1(i, j) - u1(i, j - 1)) / g.k;
        const double G1 = (j + 1 == ny) ? -2.0 * u1(i, ny - 1) / g.k
                                        : (u1(i, j + 1) - u1(i, j)) / g.k;
        const double B0 = (j == 0) ? 0.0 : 0.5 * (u1(i, j - 1) + u1(i, j));
        const double B1 = (j + 1 == ny) ? 0.0 : 0.5 * (u1(i, j) + u1(i, j + 1));
        const double t3 = 0.5 * (A0 * G0 + A1 * G1);
        const double t4 = (A1 * B1 - A0 * B0) / g.k;
        v += cg4 * (t1 + t2 + t3 + t4);
      }
      out1(i, j) = v;
    }
  }

  // y momentum at interior y-faces
  for (int j = 1; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double lap_y = u2(i, j + 1) - 2.0 * u2(i, j) + u2(i, j - 1);
      double lap_x;
      if (i == 0 && nx > 1) {
        lap_x = u2(1, j) - 3.0 * u2(0, j);
      } else if (i == nx - 1 && nx > 1) {
        lap_x = u2(nx - 2, j) - 3.0 * u2(nx - 1, j);
      } else {
        lap_x = u2(i + 1, j) - 2.0 * u2(i, j) + u2(i - 1, j);
      }
      double v = idt * u2(i, j) - vx * lap_x - vy * lap_y;

      if (!symmetric_) {
        // corner factors at columns i and i+1: Ay = P_y Ut1, K = D_x u2,
        // M = P_x u2
        const double Ay0 = Ut1_corner_(i, j);
        const double Ay1 = Ut1_corner_(i + 1, j);
        const double K0 = (i == 0) ? 2.0 * u2(0, j) / g.h
                                   : (u2(i, j) - u2(i - 1, j)) / g.h;
        const double K1 = (i + 1 == nx) ? -2.0 * u2(nx - 1, j) / g.h
                                        : (u2(i + 1, j) - u2(i, j)) / g.h;
        const double M0 = (i == 0) ? 0.0 : 0.5 * (u2(i - 1, j) + u2(i, j));
        const double M1 = (i + 1 == nx) ? 0.0 : 0.5 * (u2(i, j) + u2(i + 1, j));
        const double s1 = 0.5 * (Ay0 * K0 + Ay1 * K1);
        const double s2 = (Ay1 * M1 - Ay0 * M0) / g.h;
        // Ut2 D_y(P_y u2) + P_y d_y(u2 Ut2)
        const double s3 = Ut2_(i, j) * (u2(i, j + 1) - u2(i, j - 1)) / (2.0 * g.k);
        const double s4 = (u2(i, j + 1) * Ut2_(i, j + 1) -
                           u2(i, j - 1) * Ut2_(i, j - 1)) /
                          (2.0 * g.k);
        v += cg4 * (s1 + s2 + s3 + s4);
      }
      out2(i, j) = v;
    }
  }
}

LinearOperator MomentumOperator::as_linear_operator(const VelocityDofs& dofs) const {
  struct Scratch {
    XFaceField u1, v1;
    YFaceField u2, v2;
  };
  auto scratch = std::make_shared<Scratch>();
  scratch->u1 = XFaceField(*g_);
  scratch->v1 = XFaceField(*g_);
  scratch->u2 = YFaceField(*g_);
  scratch->v2 = YFaceField(*g_);

  const MomentumOperator* self = this;
  const VelocityDofs* d = &dofs;
  LinearOperator op;
  op.size = dofs.total;
  op.symmetric = symmetric_;
  op.apply = [self, d, scratch](const std::vector<double>& in,
                                std::vector<double>& out) {
    d->unpack(in, scratch->u1, scratch->u2);
    self->apply_into(scratch->u1, scratch->u2, scratch->v1, scratch->v2);
    d->pack(scratch->v1, scratch->v2, out);
  };
  return op;
}

StokesResult stokes_saddle_solve(const MomentumOperator& H, const XFaceField& rhs_u1,
                                 const YFaceField& rhs_u2, const CellField& rhs_div,
                                 double tol, int maxit, const StokesGuess& guess) {
  const StaggeredGrid& g = H.grid();
  require_xface(rhs_u1, g);
  require_yface(rhs_u2, g);
  require_cell(rhs_div, g);

  const double div_mean = mean_M(rhs_div, g) * g.area();
  const double div_scale = norm_M(rhs_div, g);
  if (std::abs(div_mean) > 1e-8 * std::max(1.0, div_scale)) {
    throw IncompatibleDivergenceData(
        "stokes_saddle_solve: divergence data must have zero mean, got integral " +
        std::to_string(div_mean));
  }
  CellField rhs_div0 = rhs_div;
  project_mean_zero(rhs_div0, g);

  const VelocityDofs dofs(g);
  LinearOperator Hop = H.as_linear_operator(dofs);
  const double inner_tol = 0.01 * tol;

  SolverReport total;

  // U_F = H^{-1} rhs_u, warm-started from the caller's velocity guess
  std::vector<double> f, uF;
  dofs.pack(rhs_u1, rhs_u2, f);
  if (guess.u1 && guess.u2) dofs.pack(*guess.u1, *guess.u2, uF);
  SolverReport repF = krylov_solve(Hop, f, uF, inner_tol, maxit);
  total.iterations += repF.iterations;

  XFaceField uF1;
  YFaceField uF2;
  dofs.unpack(uF, uF1, uF2);

  // Schur system: S' p = rhs_div - div(U_F) with S' q = -div(H^{-1} G q),
  // symmetric positive definite on mean-zero pressures when H is symmetric.
  CellField schur_rhs = divergence(uF1, uF2, g);
  schur_rhs.scale(-1.0);
  schur_rhs.axpy(1.0, rhs_div0);
  project_mean_zero(schur_rhs, g);

  int inner_iters = 0;
  LinearOperator Sop;
  Sop.size = g.nx * g.ny;
  Sop.symmetric = Hop.symmetric;
  Sop.apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    CellField q(g);
    q.raw() = in;
    XFaceField gx;
    YFaceField gy;
    gradient(q, g, gx, gy);
    std::vector<double> gq, v;
    dofs.pack(gx, gy, gq);
    SolverReport rep = krylov_solve(Hop, gq, v, inner_tol, maxit);
    inner_iters += rep.iterations;
    XFaceField v1;
    YFaceField v2;
    dofs.unpack(v, v1, v2);
    CellField dv = divergence(v1, v2, g);
    dv.scale(-1.0);
    project_mean_zero(dv, g);
    out = dv.raw();
  };

  std::vector<double> pvec;
  if (guess.p) {
    CellField p0 = *guess.p;
    project_mean_zero(p0, g);
    pvec = p0.raw();
  }
  SolverReport repP = krylov_solve(Sop, schur_rhs.raw(), pvec, tol, maxit);
  total.iterations += repP.iterations + inner_iters;

  StokesResult res;
  res.P = CellField(g);
  res.P.raw() = pvec;
  project_mean_zero(res.P, g);

  // back substitution: H U = rhs_u - G P
  XFaceField gpx;
  YFaceField gpy;
  gradient(res.P, g, gpx, gpy);
  XFaceField r1 = rhs_u1;
  r1.axpy(-1.0, gpx);
  YFaceField r2 = rhs_u2;
  r2.axpy(-1.0, gpy);
  std::vector<double> rp, usol = uF;
  dofs.pack(r1, r2, rp);
  SolverReport repU = krylov_solve(Hop, rp, usol, inner_tol, maxit);
  total.iterations += repU.iterations;
  dofs.unpack(usol, res.U1, res.U2);

  // true residuals for the report
  XFaceField h1;
  YFaceField h2;
  H.apply(res.U1, res.U2, h1, h2);
  h1.axpy(1.0, gpx);
  h2.axpy(1.0, gpy);
  h1.axpy(-1.0, rhs_u1);
  h2.axpy(-1.0, rhs_u2);
  const double mom_scale = std::sqrt(velocity_l2_sq(rhs_u1, rhs_u2, g));
  const double mom_res = std::sqrt(velocity_l2_sq(h1, h2, g)) / std::max(1.0, mom_scale);
  CellField dres = divergence(res.U1, res.U2, g);
  dres.axpy(-1.0, rhs_div0);
  const double div_res = norm_M(dres, g) / std::max(1.0, mom_scale);
  total.relative_residual = std::max(mom_res, div_res);
  total.converged = repF.converged && repP.converged && repU.converged;
  res.report = total;
  return res;
}

}  // namespace savmac
