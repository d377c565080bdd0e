#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace permuframe::s3_reference {

// Worked example on S_3 with S = {(12), (23)}. Every vector is listed in the
// order id, (12), (23), (13), (123), (132) (GroupOrdering::paper_s3()).

struct LabeledVector {
  std::string name;
  std::string shape;
  int k = 1;
  int i = 1;
  Eigen::VectorXd values;
};

inline Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index j = 0;
  for (double x : values) v(j++) = x;
  return v;
}

/// Coefficient functions pi_{k,i} of the trivial, standard and sign irreps.
inline std::vector<LabeledVector> coefficient_functions() {
  const double h = std::sqrt(3.0) / 2.0;
  return {
      {"pi_1,1", "2,1", 1, 1, vec({1, -0.5, 1, -0.5, -0.5, -0.5})},
      {"pi_2,1", "2,1", 2, 1, vec({0, h, 0, -h, -h, h})},
      {"pi_1,2", "2,1", 1, 2, vec({0, h, 0, -h, h, -h})},
      {"pi_2,2", "2,1", 2, 2, vec({1, 0.5, -1, 0.5, -0.5, -0.5})},
      {"iota_1,1", "3", 1, 1, vec({1, 1, 1, 1, 1, 1})},
      {"tau_1,1", "1,1,1", 1, 1, vec({1, -1, -1, -1, 1, 1})},
  };
}

struct ZSpaceVector {
  std::string name;
  std::string shape;
  int i = 1;
  double eigenvalue = 0.0;
  Eigen::VectorXd coeff;     // eigenvector X of pi(S)
  Eigen::VectorXd spanning;  // sum_k x_k pi_{k,i}, unnormalized
};

/// Eigenvectors of pi(S) for the standard irrep: lambda = 1 and lambda = -1.
inline Eigen::VectorXd standard_eigenvector(double eigenvalue) {
  const double r3 = std::sqrt(3.0);
  return eigenvalue > 0 ? vec({r3, 1.0}) : vec({-1.0 / r3, 1.0});
}

/// The six Z-spaces, each spanned by one vector.
inline std::vector<ZSpaceVector> z_spaces() {
  const double r3 = std::sqrt(3.0);
  return {
      {"Z_pi,1,1", "2,1", 1, 1.0, standard_eigenvector(1.0), vec({r3, 0, r3, -r3, -r3, 0})},
      {"Z_pi,1,-1", "2,1", 1, -1.0, standard_eigenvector(-1.0),
       vec({-1 / r3, 2 / r3, -1 / r3, -1 / r3, -1 / r3, 2 / r3})},
      {"Z_pi,2,1", "2,1", 2, 1.0, standard_eigenvector(1.0), vec({1, 2, -1, -1, 1, -2})},
      {"Z_pi,2,-1", "2,1", 2, -1.0, standard_eigenvector(-1.0), vec({1, 0, -1, 1, -1, 0})},
      {"Z_iota,1,2", "3", 1, 2.0, vec({1.0}), vec({1, 1, 1, 1, 1, 1})},
      {"Z_tau,1,-2", "1,1,1", 1, -2.0, vec({1.0}), vec({1, -1, -1, -1, 1, 1})},
  };
}

/// max_j |a_j/|a| - s b_j/|b||, s = +-1 chosen to align the two.
inline double collinearity_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd ua = a / a.norm();
  Eigen::VectorXd ub = b / b.norm();
  if (ua.dot(ub) < 0) ub = -ub;
  return (ua - ub).cwiseAbs().maxCoeff();
}

}  // namespace permuframe::s3_reference
