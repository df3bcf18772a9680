#ifndef GMEB_TESTS_FIXTURES_HPP
#define GMEB_TESTS_FIXTURES_HPP

#include <cmath>

#include <Eigen/Dense>

#include "gmeb/basis.hpp"
#include "gmeb/rng.hpp"

namespace gmeb::tests {

// Three subspaces of R^5 (two planes and a line) whose rank-1 and rank-2
// minimax centers are known in closed form. Used throughout as the exactly
// solvable instance.
inline SubspaceCollection worked_example() {
  const double s23 = std::sqrt(2.0 / 3.0);
  const double s6 = 1.0 / std::sqrt(6.0);
  const double s78 = std::sqrt(7.0 / 8.0);
  const double s8 = 1.0 / std::sqrt(8.0);

  Eigen::MatrixXd x1(5, 2), x2(5, 2), x3(5, 1);
  x1 << s23, 0, s6, 0, s6, 0, 0, s78, 0, s8;
  x2 << s6, 0, s23, 0, s6, 0, 0, s8, 0, s78;
  x3 << s6, s6, s23, 0, 0;
  return SubspaceCollection({Basis(x1), Basis(x2), Basis(x3)});
}

// Closed-form rank-1 center: the normalized mean of the three first columns.
inline Basis worked_center_k1() {
  Eigen::MatrixXd u(5, 1);
  const double s3 = 1.0 / std::sqrt(3.0);
  u << s3, s3, s3, 0, 0;
  return Basis(u);
}

// Closed-form rank-2 center.
inline Basis worked_center_k2() {
  Eigen::MatrixXd u(5, 2);
  const double a = 3.0 / std::sqrt(22.0);
  const double b = 2.0 / std::sqrt(22.0);
  const double c = 1.0 / std::sqrt(2.0);
  u << a, 0, a, 0, b, 0, 0, c, 0, c;
  return Basis(u);
}

// Frozen expected values for the worked example. The two radii are the
// closed-form ball radii; the third value is the distance from the rank-2
// center to the line x3 (off the support), reduced by hand to 8/33.
inline constexpr double kRadiusK1 = 1.0 / 9.0;
inline const double kRadiusK2 = (14.0 - 3.0 * std::sqrt(7.0)) / 24.0;  // ~0.252614419
inline constexpr double kDistCenter2ToX3 = 8.0 / 33.0;                 // ~0.242424242

// Order-selection totals for the worked example: (0 + 1, 1/9 + 1/9,
// radius/2 + radius/2).
inline constexpr double kOrderTotalK1 = 2.0 / 9.0;
inline const double kOrderTotalK2 = kRadiusK2;

inline Basis random_basis_of(int n, int p, RngStream& rng) {
  return orthonormalize(rng.gaussian_matrix(n, p));
}

// Random n x n orthogonal matrix (QR of a Gaussian).
inline Eigen::MatrixXd random_orthogonal(int n, RngStream& rng) {
  return orthonormalize(rng.gaussian_matrix(n, n), 1e-14).matrix();
}

}  // namespace gmeb::tests

#endif  // GMEB_TESTS_FIXTURES_HPP
