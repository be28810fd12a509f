#include "savmac/operators.hpp"

#include <cmath>

namespace savmac {

CellField dx_face_to_center(const XFaceField& f, const StaggeredGrid& g) {
  require_xface(f, g);
  CellField out(g);
  const double ih = 1.0 / g.h;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = (f(i + 1, j) - f(i, j)) * ih;
  return out;
}

CellField dy_face_to_center(const YFaceField& f, const StaggeredGrid& g) {
  require_yface(f, g);
  CellField out(g);
  const double ik = 1.0 / g.k;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = (f(i, j + 1) - f(i, j)) * ik;
  return out;
}

XFaceField Dx_center_to_face(const CellField& f, const StaggeredGrid& g) {
  require_cell(f, g);
  XFaceField out(g);  // wall columns stay 0
  const double ih = 1.0 / g.h;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i)
      out(i, j) = (f(i, j) - f(i - 1, j)) * ih;
  return out;
}

YFaceField Dy_center_to_face(const CellField& f, const StaggeredGrid& g) {
  require_cell(f, g);
  YFaceField out(g);  // wall rows stay 0
  const double ik = 1.0 / g.k;
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = (f(i, j) - f(i, j - 1)) * ik;
  return out;
}

XFaceField Dx_cell_to_xface(const CellField& f, const StaggeredGrid& g) {
  return Dx_center_to_face(f, g);
}

YFaceField Dy_cell_to_yface(const CellField& f, const StaggeredGrid& g) {
  return Dy_center_to_face(f, g);
}

CornerField Dy_xface_to_corner(const XFaceField& f, const StaggeredGrid& g) {
  require_xface(f, g);
  CornerField out(g);
  const double ik = 1.0 / g.k;
  const double ikh = 2.0 / g.k;  // half-cell spacing at the walls
  for (int i = 0; i <= g.nx; ++i) {
    out(i, 0) = f(i, 0) * ikh;                 // (f_{i,1/2} - 0) / (k/2)
    out(i, g.ny) = -f(i, g.ny - 1) * ikh;      // (0 - f_{i,ny-1/2}) / (k/2)
  }
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i)
      out(i, j) = (f(i, j) - f(i, j - 1)) * ik;
  return out;
}

CornerField Dx_yface_to_corner(const YFaceField& f, const StaggeredGrid& g) {
  require_yface(f, g);
  CornerField out(g);
  const double ih = 1.0 / g.h;
  const double ihh = 2.0 / g.h;
  for (int j = 0; j <= g.ny; ++j) {
    out(0, j) = f(0, j) * ihh;
    out(g.nx, j) = -f(g.nx - 1, j) * ihh;
  }
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 1; i < g.nx; ++i)
      out(i, j) = (f(i, j) - f(i - 1, j)) * ih;
  return out;
}

XFaceField dy_corner_to_xface(const CornerField& f, const StaggeredGrid& g) {
  require_corner(f, g);
  XFaceField out(g);
  const double ik = 1.0 / g.k;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i)
      out(i, j) = (f(i, j + 1) - f(i, j)) * ik;
  return out;
}

YFaceField dx_corner_to_yface(const CornerField& f, const StaggeredGrid& g) {
  require_corner(f, g);
  YFaceField out(g);
  const double ih = 1.0 / g.h;
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = (f(i + 1, j) - f(i, j)) * ih;
  return out;
}

CellField Px_xface_to_center(const XFaceField& f, const StaggeredGrid& g) {
  require_xface(f, g);
  CellField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = 0.5 * (f(i, j) + f(i + 1, j));
  return out;
}

XFaceField Px_center_to_xface(const CellField& f, const StaggeredGrid& g) {
  require_cell(f, g);
  XFaceField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i)
      out(i, j) = 0.5 * (f(i - 1, j) + f(i, j));
  return out;
}

CellField Py_yface_to_center(const YFaceField& f, const StaggeredGrid& g) {
  require_yface(f, g);
  CellField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = 0.5 * (f(i, j) + f(i, j + 1));
  return out;
}

YFaceField Py_center_to_yface(const CellField& f, const StaggeredGrid& g) {
  require_cell(f, g);
  YFaceField out(g);
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = 0.5 * (f(i, j - 1) + f(i, j));
  return out;
}

CornerField Px_yface_to_corner(const YFaceField& f, const StaggeredGrid& g) {
  require_yface(f, g);
  CornerField out(g);  // x-wall columns keep the Dirichlet 0
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 1; i < g.nx; ++i)
      out(i, j) = 0.5 * (f(i - 1, j) + f(i, j));
  return out;
}

CornerField Py_xface_to_corner(const XFaceField& f, const StaggeredGrid& g) {
  require_xface(f, g);
  CornerField out(g);  // y-wall rows keep the Dirichlet 0
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i)
      out(i, j) = 0.5 * (f(i, j - 1) + f(i, j));
  return out;
}

XFaceField Py_corner_to_xface(const CornerField& f, const StaggeredGrid& g) {
  require_corner(f, g);
  XFaceField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i)
      out(i, j) = 0.5 * (f(i, j) + f(i, j + 1));
  return out;
}

YFaceField Px_corner_to_yface(const CornerField& f, const StaggeredGrid& g) {
  require_corner(f, g);
  YFaceField out(g);
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = 0.5 * (f(i, j) + f(i + 1, j));
  return out;
}

double inner_M(const CellField& a, const CellField& b, const StaggeredGrid& g) {
  require_cell(a, g);
  require_cell(b, g);
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      s += a(i, j) * b(i, j);
  return s * g.h * g.k;
}

double inner_TM(const XFaceField& a, const XFaceField& b, const StaggeredGrid& g) {
  require_xface(a, g);
  require_xface(b, g);
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i)
      s += a(i, j) * b(i, j);
  return s * g.h * g.k;
}

double inner_MT(const YFaceField& a, const YFaceField& b, const StaggeredGrid& g) {
  require_yface(a, g);
  require_yface(b, g);
  double s = 0.0;
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      s += a(i, j) * b(i, j);
  return s * g.h * g.k;
}

double inner_Tx(const CornerField& a, const CornerField& b, const StaggeredGrid& g) {
  require_corner(a, g);
  require_corner(b, g);
  double s = 0.0;
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i)
      s += g.x_node_weight(i) * g.k * a(i, j) * b(i, j);
  return s;
}

double inner_Ty(const CornerField& a, const CornerField& b, const StaggeredGrid& g) {
  require_corner(a, g);
  require_corner(b, g);
  double s = 0.0;
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 1; i < g.nx; ++i)
      s += g.h * g.y_node_weight(j) * a(i, j) * b(i, j);
  return s;
}

double norm_M(const CellField& f, const StaggeredGrid& g) { return std::sqrt(inner_M(f, f, g)); }
double norm_TM(const XFaceField& f, const StaggeredGrid& g) { return std::sqrt(inner_TM(f, f, g)); }
double norm_MT(const YFaceField& f, const StaggeredGrid& g) { return std::sqrt(inner_MT(f, f, g)); }
double norm_Tx(const CornerField& f, const StaggeredGrid& g) { return std::sqrt(inner_Tx(f, f, g)); }
double norm_Ty(const CornerField& f, const StaggeredGrid& g) { return std::sqrt(inner_Ty(f, f, g)); }

double grad_norm_sq_cell(const CellField& f, const StaggeredGrid& g) {
  XFaceField gx = Dx_center_to_face(f, g);
  YFaceField gy = Dy_center_to_face(f, g);
  return inner_TM(gx, gx, g) + inner_MT(gy, gy, g);
}

double velocity_l2_sq(const XFaceField& u1, const YFaceField& u2, const StaggeredGrid& g) {
  return inner_TM(u1, u1, g) + inner_MT(u2, u2, g);
}

double velocity_Dnorm_sq(const XFaceField& u1, const YFaceField& u2, const StaggeredGrid& g) {
  CellField dxu1 = dx_face_to_center(u1, g);
  CornerField dyu1 = Dy_xface_to_corner(u1, g);
  CornerField dxu2 = Dx_yface_to_corner(u2, g);
  CellField dyu2 = dy_face_to_center(u2, g);
  return inner_M(dxu1, dxu1, g) + inner_Ty(dyu1, dyu1, g) +
         inner_Tx(dxu2, dxu2, g) + inner_M(dyu2, dyu2, g);
}

CellField laplace_neumann(const CellField& f, const StaggeredGrid& g) {
  require_cell(f, g);
  CellField out(g);
  const double ih2 = 1.0 / (g.h * g.h);
  const double ik2 = 1.0 / (g.k * g.k);
  // fused d_x D_x + d_y D_y with zero flux through the walls
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double fw = (i > 0) ? (f(i, j) - f(i - 1, j)) : 0.0;
      const double fe = (i + 1 < g.nx) ? (f(i + 1, j) - f(i, j)) : 0.0;
      const double fs = (j > 0) ? (f(i, j) - f(i, j - 1)) : 0.0;
      const double fn = (j + 1 < g.ny) ? (f(i, j + 1) - f(i, j)) : 0.0;
      out(i, j) = (fe - fw) * ih2 + (fn - fs) * ik2;
    }
  }
  return out;
}

CellField divergence(const XFaceField& u1, const YFaceField& u2, const StaggeredGrid& g) {
  require_xface(u1, g);
  require_yface(u2, g);
  CellField out(g);
  const double ih = 1.0 / g.h;
  const double ik = 1.0 / g.k;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = (u1(i + 1, j) - u1(i, j)) * ih + (u2(i, j + 1) - u2(i, j)) * ik;
  return out;
}

void gradient(const CellField& p, const StaggeredGrid& g, XFaceField& gx, YFaceField& gy) {
  gx = Dx_center_to_face(p, g);
  gy = Dy_center_to_face(p, g);
}

double mean_M(const CellField& f, const StaggeredGrid& g) {
  require_cell(f, g);
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      s += f(i, j);
  return s * g.h * g.k / g.area();
}

void project_mean_zero(CellField& f, const StaggeredGrid& g) {
  const double m = mean_M(f, g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      f(i, j) -= m;
}

}  // namespace savmac
