/// @file reference_ch.hpp
/// @brief Independent scalar Cahn-Hilliard SAV/CN reference implementation.
///
/// Deliberately shares no operator code with the library: the Neumann
/// Laplacian is hand-rolled here, the quadratures are plain loops, and each
/// step solves the monolithic (Z, W, R) system by dense LU.  Used as the
/// oracle for the zero-velocity reduction.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace refch {

struct Config {
  int nx = 16, ny = 16;
  double h = 1.0 / 16, k = 1.0 / 16;
  double mobility = 1e-3;
  double lambda = 0.1;
  double eps_sq = 0.1;
  double beta = 5.0;
  double delta = 0.0;
  double dt = 1e-4;
};

class ReferenceCh {
 public:
  explicit ReferenceCh(const Config& c) : c_(c), n_(c.nx * c.ny) {
    L_ = Eigen::MatrixXd::Zero(n_, n_);
    for (int j = 0; j < c_.ny; ++j) {
      for (int i = 0; i < c_.nx; ++i) {
        const int r = idx(i, j);
        auto add = [&](int ii, int jj, double w) { L_(r, idx(ii, jj)) += w; };
        if (i > 0) {
          add(i - 1, j, 1.0 / (c_.h * c_.h));
          add(i, j, -1.0 / (c_.h * c_.h));
        }
        if (i + 1 < c_.nx) {
          add(i + 1, j, 1.0 / (c_.h * c_.h));
          add(i, j, -1.0 / (c_.h * c_.h));
        }
        if (j > 0) {
          add(i, j - 1, 1.0 / (c_.k * c_.k));
          add(i, j, -1.0 / (c_.k * c_.k));
        }
        if (j + 1 < c_.ny) {
          add(i, j + 1, 1.0 / (c_.k * c_.k));
          add(i, j, -1.0 / (c_.k * c_.k));
        }
      }
    }
  }

  int idx(int i, int j) const { return j * c_.nx + i; }

  void set_initial(const std::vector<double>& z0) {
    Z_ = Eigen::Map<const Eigen::VectorXd>(z0.data(), n_);
    Zprev_ = Z_;
    R_ = std::sqrt(e1h(Z_) + c_.delta);
  }

  double e1h(const Eigen::VectorXd& z) const {
    double s = 0.0;
    for (int m = 0; m < n_; ++m) {
      const double q = z[m] * z[m] - 1.0 - c_.beta;
      s += q * q;
    }
    return s * c_.h * c_.k / (4.0 * c_.eps_sq);
  }

  void step() {
    const Eigen::VectorXd Zt = 1.5 * Z_ - 0.5 * Zprev_;
    const double denom = std::sqrt(e1h(Zt) + c_.delta);
    Eigen::VectorXd b(n_);
    for (int m = 0; m < n_; ++m)
      b[m] = Zt[m] * (Zt[m] * Zt[m] - 1.0 - c_.beta) / c_.eps_sq / denom;

    const double w = c_.h * c_.k;
    const double le = c_.lambda * c_.beta / c_.eps_sq;
    const int N = 2 * n_ + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);

    A.block(0, 0, n_, n_) = Eigen::MatrixXd::Identity(n_, n_) / c_.dt;
    A.block(0, n_, n_, n_) = -c_.mobility * L_;
    rhs.segment(0, n_) = Z_ / c_.dt;

    A.block(n_, 0, n_, n_) =
        0.5 * c_.lambda * L_ - 0.5 * le * Eigen::MatrixXd::Identity(n_, n_);
    A.block(n_, n_, n_, n_) = Eigen::MatrixXd::Identity(n_, n_);
    A.block(n_, 2 * n_, n_, 1) = -0.5 * c_.lambda * b;
    rhs.segment(n_, n_) = -0.5 * c_.lambda * L_ * Z_ + 0.5 * le * Z_ + 0.5 * c_.lambda * R_ * b;

    A.block(2 * n_, 0, 1, n_) = -0.5 * w * b.transpose();
    A(2 * n_, 2 * n_) = 1.0;
    rhs(2 * n_) = R_ - 0.5 * w * b.dot(Z_);

    const Eigen::VectorXd x = A.partialPivLu().solve(rhs);
    Zprev_ = Z_;
    Z_ = x.segment(0, n_);
    R_ = x(2 * n_);
  }

  const Eigen::VectorXd& Z() const { return Z_; }
  double R() const { return R_; }
  double mass() const { return Z_.sum() * c_.h * c_.k; }

 private:
  Config c_;
  int n_;
  Eigen::MatrixXd L_;
  Eigen::VectorXd Z_, Zprev_;
  double R_ = 0.0;
};

}  // namespace refch
