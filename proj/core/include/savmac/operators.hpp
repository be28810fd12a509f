/// @file operators.hpp
/// @brief Staggered difference and interpolation operators, discrete inner
/// products and norms.
///
/// Two families of one-sided differences move values between adjacent
/// locations on the uniform MAC grid:
///
///   d_x: integer x-location -> half x-location, spacing h
///   D_x: half x-location -> integer x-location, spacing h interior,
///        h/2 one-sided at the two walls (degenerate boundary node)
///
/// and the y analogues with spacing k.  D applied to a cell-centered field
/// stores explicit zeros on the wall faces (homogeneous Neumann), so the
/// composite operators below never branch.  D applied across a Dirichlet-zero
/// velocity uses the half-cell one-sided difference at the walls.
///
/// Interpolations P_x, P_y are two-point midpoint averages (linear
/// interpolation on a uniform grid).  Where the target is a wall location of
/// a Dirichlet-zero quantity the stored value is that Dirichlet zero; no
/// consumer reads it for anything else.
///
/// All reductions run i inner / j outer in increasing index order; results
/// are deterministic for a fixed build.

#pragma once

#include "savmac/grid.hpp"

namespace savmac {

// ---------------------------------------------------------------------------
// differences
// ---------------------------------------------------------------------------

/// [d_x f]_{i+1/2,j+1/2} = (f_{i+1,j+1/2} - f_{i,j+1/2}) / h
CellField dx_face_to_center(const XFaceField& f, const StaggeredGrid& g);

/// [d_y f]_{i+1/2,j+1/2} = (f_{i+1/2,j+1} - f_{i+1/2,j}) / k
CellField dy_face_to_center(const YFaceField& f, const StaggeredGrid& g);

/// [D_x f]_{i,j+1/2} = (f_{i+1/2,j+1/2} - f_{i-1/2,j+1/2}) / h at interior
/// faces; wall faces i = 0, nx are stored as 0 (homogeneous Neumann).
XFaceField Dx_center_to_face(const CellField& f, const StaggeredGrid& g);

/// y mirror of Dx_center_to_face; wall rows j = 0, ny are 0.
YFaceField Dy_center_to_face(const CellField& f, const StaggeredGrid& g);

/// [D_y f]_{i,j} for an x-face field vanishing on the y-walls (e.g. U1).
/// Interior corners use spacing k; the wall rows use the one-sided half-cell
/// difference (f_{i,1/2} - 0)/(k/2) resp. (0 - f_{i,ny-1/2})/(k/2).
CornerField Dy_xface_to_corner(const XFaceField& f, const StaggeredGrid& g);

/// x mirror for a y-face field vanishing on the x-walls (e.g. U2).
CornerField Dx_yface_to_corner(const YFaceField& f, const StaggeredGrid& g);

/// [d_y f]_{i,j+1/2} = (f_{i,j+1} - f_{i,j}) / k for a corner field.
XFaceField dy_corner_to_xface(const CornerField& f, const StaggeredGrid& g);

/// [d_x f]_{i+1/2,j} = (f_{i+1,j} - f_{i,j}) / h for a corner field.
YFaceField dx_corner_to_yface(const CornerField& f, const StaggeredGrid& g);

/// [D_x f]_{i,j+1/2} at interior x-faces from an x-face-centered difference
/// of a cell field is Dx_center_to_face; this is the face->face-in-y variant
/// used by the y-momentum diffusion: [D_y f]_{i+1/2,j} = (f_{i+1/2,j+1/2} -
/// f_{i+1/2,j-1/2}) / k at interior y-faces, wall rows 0.
YFaceField Dy_cell_to_yface(const CellField& f, const StaggeredGrid& g);

/// alias of Dx_center_to_face semantics for the x-momentum diffusion.
XFaceField Dx_cell_to_xface(const CellField& f, const StaggeredGrid& g);

// ---------------------------------------------------------------------------
// interpolations (midpoint averages)
// ---------------------------------------------------------------------------

/// x-face -> cell: (f_{i,j+1/2} + f_{i+1,j+1/2}) / 2
CellField Px_xface_to_center(const XFaceField& f, const StaggeredGrid& g);

/// cell -> x-face at interior faces; wall faces stored as 0.
XFaceField Px_center_to_xface(const CellField& f, const StaggeredGrid& g);

/// y-face -> cell
CellField Py_yface_to_center(const YFaceField& f, const StaggeredGrid& g);

/// cell -> y-face at interior faces; wall rows stored as 0.
YFaceField Py_center_to_yface(const CellField& f, const StaggeredGrid& g);

/// y-face -> corner (average in x).  Wall columns carry the Dirichlet zero of
/// the U2-type quantity being shifted.
CornerField Px_yface_to_corner(const YFaceField& f, const StaggeredGrid& g);

/// x-face -> corner (average in y).  Wall rows carry the Dirichlet zero of
/// the U1-type quantity being shifted.
CornerField Py_xface_to_corner(const XFaceField& f, const StaggeredGrid& g);

/// corner -> x-face: (f_{i,j} + f_{i,j+1}) / 2
XFaceField Py_corner_to_xface(const CornerField& f, const StaggeredGrid& g);

/// corner -> y-face: (f_{i,j} + f_{i+1,j}) / 2
YFaceField Px_corner_to_yface(const CornerField& f, const StaggeredGrid& g);

/// y-face -> cell is Py_yface_to_center; cell -> corner etc. are not used by
/// the scheme and intentionally absent.

// ---------------------------------------------------------------------------
// inner products and norms
// ---------------------------------------------------------------------------

/// (f,g)_{l2,M}: cell centers, weight h*k per cell.
double inner_M(const CellField& a, const CellField& b, const StaggeredGrid& g);

/// (f,g)_{l2,T,M}: x-faces, interior x-nodes only (i = 1..nx-1), weight h*k.
double inner_TM(const XFaceField& a, const XFaceField& b, const StaggeredGrid& g);

/// (f,g)_{l2,M,T}: y-faces, interior y-nodes only (j = 1..ny-1), weight h*k.
double inner_MT(const YFaceField& a, const YFaceField& b, const StaggeredGrid& g);

/// (f,g)_{l2,Tx}: corners, all i with half weights at the x-walls, interior j.
double inner_Tx(const CornerField& a, const CornerField& b, const StaggeredGrid& g);

/// (f,g)_{l2,Ty}: corners, interior i, all j with half weights at the y-walls.
double inner_Ty(const CornerField& a, const CornerField& b, const StaggeredGrid& g);

double norm_M(const CellField& f, const StaggeredGrid& g);
double norm_TM(const XFaceField& f, const StaggeredGrid& g);
double norm_MT(const YFaceField& f, const StaggeredGrid& g);
double norm_Tx(const CornerField& f, const StaggeredGrid& g);
double norm_Ty(const CornerField& f, const StaggeredGrid& g);

/// ||D f||^2 = ||D_x f||^2_{l2,T,M} + ||D_y f||^2_{l2,M,T} for a cell field
/// with Neumann-zero wall faces (used for Z and W).
double grad_norm_sq_cell(const CellField& f, const StaggeredGrid& g);

/// ||u||^2_{l2} = ||u1||^2_{l2,T,M} + ||u2||^2_{l2,M,T}
double velocity_l2_sq(const XFaceField& u1, const YFaceField& u2, const StaggeredGrid& g);

/// ||D u||^2 = ||d_x u1||^2_{l2,M} + ||D_y u1||^2_{l2,Ty}
///           + ||D_x u2||^2_{l2,Tx} + ||d_y u2||^2_{l2,M}
double velocity_Dnorm_sq(const XFaceField& u1, const YFaceField& u2, const StaggeredGrid& g);

// ---------------------------------------------------------------------------
// composites
// ---------------------------------------------------------------------------

/// d_x D_x f + d_y D_y f with Neumann-zero wall faces.  Self-adjoint and
/// negative semidefinite under inner_M; constants are in the kernel.
CellField laplace_neumann(const CellField& f, const StaggeredGrid& g);

/// d_x u1 + d_y u2 at cell centers.
CellField divergence(const XFaceField& u1, const YFaceField& u2, const StaggeredGrid& g);

/// (D_x p, D_y p) at interior faces; wall entries 0 (momentum is only imposed
/// at interior faces, so no boundary closure is needed for the pressure).
void gradient(const CellField& p, const StaggeredGrid& g, XFaceField& gx, YFaceField& gy);

/// mean value of a cell field under the M measure: (f,1)_M / |Omega|.
double mean_M(const CellField& f, const StaggeredGrid& g);

/// subtract the M-mean in place.
void project_mean_zero(CellField& f, const StaggeredGrid& g);

/// pointwise product, shape-checked.
template <class F>
F hadamard(const F& a, const F& b) {
  if (!a.same_shape(b)) throw ShapeError("hadamard: shape mismatch");
  F out = a;
  for (size_t n = 0; n < out.size(); ++n) out.data()[n] *= b.data()[n];
  return out;
}

}  // namespace savmac
