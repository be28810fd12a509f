/// @file dense_oracles.hpp
/// @brief Dense LU oracles for small grids: the unreduced (Z, W, R) block
/// system of one phase step and the bordered KKT system of one momentum/
/// pressure solve.  These solve the *monolithic* linear systems directly, so
/// they validate the rank-one reduction and the Schur-complement elimination
/// used by the production path.

#pragma once

#include "savmac/solvers.hpp"
#include "savmac/stepper.hpp"
#include "test_support.hpp"

namespace savtest {

inline Mat assemble_laplace(const StaggeredGrid& g) {
  const int n = g.nx * g.ny;
  return assemble(n, [&](const std::vector<double>& v) {
    CellField f(g);
    f.raw() = v;
    return laplace_neumann(f, g).raw();
  });
}

struct ChDense {
  CellField Znew;
  CellField Wmid;
  double Rnew = 0.0;
};

/// Solves the coupled (Z^{n+1}, W^{n+1/2}, R^{n+1}) system of one phase step
/// as a single dense monolithic linear system:
///   (Z'-Z)/dt = M L W - conv
///   W = -(lambda/2) L (Z'+Z) + (lambda beta / 2 eps^2)(Z'+Z)
///       + lambda ((R'+R)/2) b
///   R' = R + (1/2)(b, Z'-Z)_M
inline ChDense dense_ch_step(const ChnsState& s, const XFaceField& U1half,
                             const YFaceField& U2half, const CellField& Ztilde,
                             const Params& p, const StaggeredGrid& g) {
  const int n = g.nx * g.ny;
  const SavCoefficients sav = sav_coefficients(Ztilde, p, g);
  const Mat L = assemble_laplace(g);
  const Vec b = to_eigen(sav.b.raw());
  const Vec Z = to_eigen(s.Z.raw());
  const Vec conv = to_eigen(phase_convection(U1half, U2half, Ztilde, g).raw());
  const double w = g.h * g.k;  // uniform cell quadrature weight
  const double le = p.lambda * p.beta / p.eps_sq();

  const int N = 2 * n + 1;
  Mat A = Mat::Zero(N, N);
  Vec rhs = Vec::Zero(N);

  // rows 0..n-1: phase update
  A.block(0, 0, n, n) = Mat::Identity(n, n) / p.dt;
  A.block(0, n, n, n) = -p.mobility * L;
  rhs.segment(0, n) = Z / p.dt - conv;

  // rows n..2n-1: chemical potential
  A.block(n, 0, n, n) = 0.5 * p.lambda * L - 0.5 * le * Mat::Identity(n, n);
  A.block(n, n, n, n) = Mat::Identity(n, n);
  A.block(n, 2 * n, n, 1) = -0.5 * p.lambda * b;
  rhs.segment(n, n) = -0.5 * p.lambda * L * Z + 0.5 * le * Z + 0.5 * p.lambda * s.R * b;

  // last row: auxiliary scalar update
  A.block(2 * n, 0, 1, n) = -0.5 * w * b.transpose();
  A(2 * n, 2 * n) = 1.0;
  rhs(2 * n) = s.R - 0.5 * w * b.dot(Z);

  const Vec x = A.fullPivLu().solve(rhs);

  ChDense out;
  out.Znew = CellField(g);
  out.Znew.raw() = from_eigen(x.segment(0, n));
  out.Wmid = CellField(g);
  out.Wmid.raw() = from_eigen(x.segment(n, n));
  out.Rnew = x(2 * n);
  return out;
}

struct StokesDense {
  XFaceField U1;
  YFaceField U2;
  CellField P;
};

/// Bordered dense KKT solve: [H G; div 0] with an extra multiplier column and
/// a mean-zero pressure row pinning the nullspace.
inline StokesDense dense_stokes(const MomentumOperator& H, const XFaceField& rhs1,
                                const YFaceField& rhs2, const CellField& rhs_div,
                                const StaggeredGrid& g) {
  const VelocityDofs dofs(g);
  const int nu = dofs.total;
  const int np = g.nx * g.ny;
  const double w = g.h * g.k;

  Mat Hm = assemble(nu, [&](const std::vector<double>& v) {
    XFaceField u1;
    YFaceField u2;
    dofs.unpack(v, u1, u2);
    XFaceField o1;
    YFaceField o2;
    H.apply(u1, u2, o1, o2);
    std::vector<double> out;
    dofs.pack(o1, o2, out);
    return out;
  });
  Mat Gm(nu, np);
  {
    std::vector<double> e(np, 0.0);
    for (int c = 0; c < np; ++c) {
      e.assign(np, 0.0);
      e[c] = 1.0;
      CellField q(g);
      q.raw() = e;
      XFaceField gx;
      YFaceField gy;
      gradient(q, g, gx, gy);
      std::vector<double> col;
      dofs.pack(gx, gy, col);
      for (int r = 0; r < nu; ++r) Gm(r, c) = col[r];
    }
  }
  Mat Dm(np, nu);
  {
    std::vector<double> e(nu, 0.0);
    for (int c = 0; c < nu; ++c) {
      e.assign(nu, 0.0);
      e[c] = 1.0;
      XFaceField u1;
      YFaceField u2;
      dofs.unpack(e, u1, u2);
      const std::vector<double> col = divergence(u1, u2, g).raw();
      for (int r = 0; r < np; ++r) Dm(r, c) = col[r];
    }
  }

  const int N = nu + np + 1;
  Mat K = Mat::Zero(N, N);
  Vec rhs = Vec::Zero(N);
  K.block(0, 0, nu, nu) = Hm;
  K.block(0, nu, nu, np) = Gm;
  K.block(nu, 0, np, nu) = Dm;
  K.block(nu, nu + np, np, 1) = Vec::Ones(np);
  K.block(nu + np, nu, 1, np) = w * Vec::Ones(np).transpose();

  std::vector<double> f;
  dofs.pack(rhs1, rhs2, f);
  rhs.segment(0, nu) = to_eigen(f);
  rhs.segment(nu, np) = to_eigen(rhs_div.raw());

  const Vec x = K.fullPivLu().solve(rhs);

  StokesDense out;
  dofs.unpack(from_eigen(x.segment(0, nu)), out.U1, out.U2);
  out.P = CellField(g);
  out.P.raw() = from_eigen(x.segment(nu, np));
  return out;
}

/// Relative l2 difference between two same-shape fields.
inline double field_rel_err(const Field2D& got, const Field2D& want) {
  double num = 0.0, den = 0.0;
  for (size_t n = 0; n < got.size(); ++n) {
    const double d = got.data()[n] - want.data()[n];
    num += d * d;
    den += want.data()[n] * want.data()[n];
  }
  return std::sqrt(num) / std::max(1e-300, std::sqrt(den));
}

inline double field_abs_err(const Field2D& got, const Field2D& want) {
  double num = 0.0;
  for (size_t n = 0; n < got.size(); ++n) {
    const double d = got.data()[n] - want.data()[n];
    num += d * d;
  }
  return std::sqrt(num);
}

}  // namespace savtest
