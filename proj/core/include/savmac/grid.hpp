/// @file grid.hpp
/// @brief Uniform MAC staggered grid and the four field locations.
///
/// Layout of unknowns on a cell (i,j):
///
///        U2(i+1/2, j+1)
///          ----o----
///          |       |
///   U1(i,j+1/2)  Z,W,P(i+1/2,j+1/2)  U1(i+1, j+1/2)
///          |       |
///          ----o----
///        U2(i+1/2, j)
///
/// Nodes x_i = x_lo + i*h (i = 0..nx), centers x_{i+1/2} = x_lo + (i+1/2)h.
/// The degenerate boundary nodes x_{-1/2} = x_0 and x_{nx+1/2} = x_{nx} give
/// the node weights h_0 = h_nx = h/2 used by the boundary-aware inner
/// products and by the one-sided wall derivatives of Dirichlet quantities.

#pragma once

#include <vector>

#include "savmac/errors.hpp"

namespace savmac {

struct StaggeredGrid {
  int nx = 0;
  int ny = 0;
  double x_lo = 0.0, x_hi = 1.0;
  double y_lo = 0.0, y_hi = 1.0;
  double h = 0.0;  ///< uniform x spacing, (x_hi - x_lo)/nx
  double k = 0.0;  ///< uniform y spacing, (y_hi - y_lo)/ny

  StaggeredGrid() = default;
  StaggeredGrid(int nx, int ny, double x_lo = 0.0, double x_hi = 1.0,
                double y_lo = 0.0, double y_hi = 1.0);

  double x_node(int i) const { return x_lo + i * h; }
  double x_center(int i) const { return x_lo + (i + 0.5) * h; }
  double y_node(int j) const { return y_lo + j * k; }
  double y_center(int j) const { return y_lo + (j + 0.5) * k; }

  /// h_i: half a cell at the two walls, h elsewhere.
  double x_node_weight(int i) const { return (i == 0 || i == nx) ? 0.5 * h : h; }
  /// k_j: half a cell at the two walls, k elsewhere.
  double y_node_weight(int j) const { return (j == 0 || j == ny) ? 0.5 * k : k; }

  double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }

  bool same_mesh(const StaggeredGrid& o) const;
};

/// Dense rectangular array of doubles.  Storage is row-major with the
/// y-index j outer: data[j*ni + i].  Every loop in this library iterates
/// i inner / j outer in increasing order, so sums and file dumps are
/// bit-reproducible.
class Field2D {
 public:
  Field2D() = default;
  Field2D(int ni, int nj, double fill = 0.0)
      : ni_(ni), nj_(nj), v_(static_cast<size_t>(ni) * nj, fill) {}

  int ni() const { return ni_; }
  int nj() const { return nj_; }
  size_t size() const { return v_.size(); }

  double& operator()(int i, int j) { return v_[static_cast<size_t>(j) * ni_ + i]; }
  double operator()(int i, int j) const { return v_[static_cast<size_t>(j) * ni_ + i]; }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::vector<double>& raw() { return v_; }
  const std::vector<double>& raw() const { return v_; }

  void fill(double value) { v_.assign(v_.size(), value); }

  bool same_shape(const Field2D& o) const { return ni_ == o.ni_ && nj_ == o.nj_; }

  /// *this += a * x
  void axpy(double a, const Field2D& x);
  /// *this *= a
  void scale(double a);

 private:
  int ni_ = 0, nj_ = 0;
  std::vector<double> v_;
};

/// Values at cell centers (x_{i+1/2}, y_{j+1/2}); nx x ny.
class CellField : public Field2D {
 public:
  CellField() = default;
  explicit CellField(const StaggeredGrid& g, double fill = 0.0)
      : Field2D(g.nx, g.ny, fill) {}
  CellField(int ni, int nj, double fill = 0.0) : Field2D(ni, nj, fill) {}
};

/// Values at x-faces (x_i, y_{j+1/2}); (nx+1) x ny.  Houses U1; a stored
/// U1 keeps columns i = 0 and i = nx exactly zero.
class XFaceField : public Field2D {
 public:
  XFaceField() = default;
  explicit XFaceField(const StaggeredGrid& g, double fill = 0.0)
      : Field2D(g.nx + 1, g.ny, fill) {}
  XFaceField(int ni, int nj, double fill = 0.0) : Field2D(ni, nj, fill) {}
};

/// Values at y-faces (x_{i+1/2}, y_j); nx x (ny+1).  Houses U2; a stored
/// U2 keeps rows j = 0 and j = ny exactly zero.
class YFaceField : public Field2D {
 public:
  YFaceField() = default;
  explicit YFaceField(const StaggeredGrid& g, double fill = 0.0)
      : Field2D(g.nx, g.ny + 1, fill) {}
  YFaceField(int ni, int nj, double fill = 0.0) : Field2D(ni, nj, fill) {}
};

/// Values at corners (x_i, y_j); (nx+1) x (ny+1).  Intermediate location for
/// the mixed convection products and the cross derivatives of U.
class CornerField : public Field2D {
 public:
  CornerField() = default;
  explicit CornerField(const StaggeredGrid& g, double fill = 0.0)
      : Field2D(g.nx + 1, g.ny + 1, fill) {}
  CornerField(int ni, int nj, double fill = 0.0) : Field2D(ni, nj, fill) {}
};

namespace detail {
void require_shape(const Field2D& f, int ni, int nj, const char* what);
}

inline void require_cell(const CellField& f, const StaggeredGrid& g, const char* what = "cell field") {
  detail::require_shape(f, g.nx, g.ny, what);
}
inline void require_xface(const XFaceField& f, const StaggeredGrid& g, const char* what = "x-face field") {
  detail::require_shape(f, g.nx + 1, g.ny, what);
}
inline void require_yface(const YFaceField& f, const StaggeredGrid& g, const char* what = "y-face field") {
  detail::require_shape(f, g.nx, g.ny + 1, what);
}
inline void require_corner(const CornerField& f, const StaggeredGrid& g, const char* what = "corner field") {
  detail::require_shape(f, g.nx + 1, g.ny + 1, what);
}

}  // namespace savmac
