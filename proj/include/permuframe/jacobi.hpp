#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "permuframe/error.hpp"

namespace permuframe {

struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // column j pairs with values(j)
  int sweeps = 0;
};

inline double max_offdiagonal(const Eigen::MatrixXd& a) {
  double off = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      if (r != c) off = std::max(off, std::abs(a(r, c)));
  return off;
}

/// Cyclic Jacobi eigensolver for real symmetric matrices.
///
/// Sweeps over all (p, q) pairs, zeroing a_pq with a plane rotation, until
/// every off-diagonal magnitude is below `tol`. Eigenvectors come back in
/// the column order Jacobi leaves them, each with its first component of
/// magnitude > 1e-12 made positive.
inline EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& input, double tol = 1e-12,
                                          int max_sweeps = 100, double symmetry_tol = 1e-10) {
  if (input.rows() != input.cols())
    throw ValidationError(fmt::format("symmetric_eigen needs a square matrix, got {}x{}",
                                      input.rows(), input.cols()));
  const Eigen::Index n = input.rows();
  const double scale = std::max(1.0, n > 0 ? input.cwiseAbs().maxCoeff() : 0.0);
  const double asym = n > 0 ? (input - input.transpose()).cwiseAbs().maxCoeff() : 0.0;
  if (asym > symmetry_tol * scale)
    throw ValidationError(fmt::format("matrix is not symmetric (max |a_ij - a_ji| = {:.3e})", asym));

  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  int sweep = 0;
  for (; max_offdiagonal(a) >= tol; ++sweep) {
    if (sweep >= max_sweeps)
      throw InvariantError(fmt::format("Jacobi did not converge in {} sweeps (off-diagonal {:.3e})",
                                       max_sweeps, max_offdiagonal(a)));
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-3 * tol) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        Eigen::VectorXd col_p = a.col(p);
        a.col(p) = c * col_p - s * a.col(q);
        a.col(q) = s * col_p + c * a.col(q);
        Eigen::RowVectorXd row_p = a.row(p);
        a.row(p) = c * row_p - s * a.row(q);
        a.row(q) = s * row_p + c * a.row(q);
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        Eigen::VectorXd v_p = v.col(p);
        v.col(p) = c * v_p - s * v.col(q);
        v.col(q) = s * v_p + c * v.col(q);
      }
    }
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(v(r, j)) > 1e-12) {
        if (v(r, j) < 0.0) v.col(j) = -v.col(j);
        break;
      }
    }
  }
  return {a.diagonal(), v, sweep};
}

/// Eigenvalue together with an orthonormal basis (columns) of its eigenspace.
struct Eigenspace {
  double eigenvalue = 0.0;
  Eigen::MatrixXd basis;

  Eigen::Index multiplicity() const { return basis.cols(); }
};

/// Merges eigenvalues closer than `group_tol` (chained, after sorting) into
/// one eigenspace whose basis is re-orthonormalized by modified Gram-Schmidt
/// in Jacobi column order. Spaces come out by ascending eigenvalue.
inline std::vector<Eigenspace> group_eigenspaces(const EigenDecomposition& eig,
                                                 double group_tol = 1e-8) {
  const auto n = eig.values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return eig.values(x) < eig.values(y);
  });

  std::vector<Eigenspace> spaces;
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t stop = start + 1;
    while (stop < order.size() &&
           eig.values(order[stop]) - eig.values(order[stop - 1]) <= group_tol)
      ++stop;
    std::vector<Eigen::Index> members(order.begin() + start, order.begin() + stop);
    std::sort(members.begin(), members.end());

    Eigenspace space;
    double sum = 0.0;
    space.basis.resize(eig.vectors.rows(), static_cast<Eigen::Index>(members.size()));
    for (std::size_t m = 0; m < members.size(); ++m) {
      sum += eig.values(members[m]);
      Eigen::VectorXd w = eig.vectors.col(members[m]);
      for (std::size_t prev = 0; prev < m; ++prev) {
        const auto col = space.basis.col(static_cast<Eigen::Index>(prev));
        w -= col.dot(w) * col;
      }
      space.basis.col(static_cast<Eigen::Index>(m)) = w / w.norm();
    }
    space.eigenvalue = sum / static_cast<double>(members.size());
    spaces.push_back(std::move(space));
    start = stop;
  }
  return spaces;
}

/// max over basis vectors v of ||A v - lambda v||_inf.
inline double eigen_residual(const Eigen::MatrixXd& a, const Eigenspace& space) {
  if (space.basis.cols() == 0) return 0.0;
  return (a * space.basis - space.eigenvalue * space.basis).cwiseAbs().maxCoeff();
}

}  // namespace permuframe
