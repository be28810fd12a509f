#include "savmac/grid.hpp"

#include <string>

namespace savmac {

StaggeredGrid::StaggeredGrid(int nx_, int ny_, double x_lo_, double x_hi_,
                             double y_lo_, double y_hi_)
    : nx(nx_), ny(ny_), x_lo(x_lo_), x_hi(x_hi_), y_lo(y_lo_), y_hi(y_hi_) {
  if (nx < 2 || ny < 2) {
    throw ShapeError("StaggeredGrid requires nx >= 2 and ny >= 2");
  }
  if (x_hi <= x_lo || y_hi <= y_lo) {
    throw ShapeError("StaggeredGrid requires x_hi > x_lo and y_hi > y_lo");
  }
  h = (x_hi - x_lo) / nx;
  k = (y_hi - y_lo) / ny;
}

bool StaggeredGrid::same_mesh(const StaggeredGrid& o) const {
  return nx == o.nx && ny == o.ny && x_lo == o.x_lo && x_hi == o.x_hi &&
         y_lo == o.y_lo && y_hi == o.y_hi;
}

void Field2D::axpy(double a, const Field2D& x) {
  if (!same_shape(x)) throw ShapeError("axpy: shape mismatch");
  for (size_t n = 0; n < v_.size(); ++n) v_[n] += a * x.v_[n];
}

void Field2D::scale(double a) {
  for (double& x : v_) x *= a;
}

namespace detail {
void require_shape(const Field2D& f, int ni, int nj, const char* what) {
  if (f.ni() != ni || f.nj() != nj) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(ni) +
                     "x" + std::to_string(nj) + ", got " +
                     std::to_string(f.ni()) + "x" + std::to_string(f.nj()));
  }
}
}  // namespace detail

}  // namespace savmac
