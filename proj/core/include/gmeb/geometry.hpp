#ifndef GMEB_GEOMETRY_HPP
#define GMEB_GEOMETRY_HPP

#include <Eigen/Core>

#include "gmeb/basis.hpp"

namespace gmeb {

// Principal angles between col(a) and col(b), from the singular values of
// a^T b. Returns min(a.p, b.p) angles sorted nondecreasing in [0, pi/2].
// Singular values overshooting 1 by at most 1e-12 are clamped to 1; larger
// overshoot throws (it indicates a non-orthonormal operand, not roundoff).
AngleVector principal_angles(const Basis& a, const Basis& b);

// Minimum point-to-set squared-chordal distance on Gr(k,n) from the center
// candidate u (k-dimensional) to the set of k-dimensional subspaces
// containing / contained in x:
//
//   min{k,p} - Tr(u^T x x^T u)  =  sum of the first min{k,p} squared sines.
//
// Zero when one subspace contains the other. Result clamped to
// [0, min(k,p)].
double p2s_distance(const Basis& u, const Basis& x);

// A point of Gr(k,n) achieving p2s_distance(u, x): the closest k-dimensional
// subspace of x when p >= k, or x padded with principal directions of u when
// p < k. The padded construction assumes generic position; if the padded
// matrix loses rank below 1e-10 it throws DegenerateCompletion.
Basis closest_point(const Basis& u, const Basis& x);

// Orthonormal basis for the orthogonal complement of col(u).
// Throws FullSpace when u already spans R^n.
Basis orthogonal_complement(const Basis& u);

// Half the squared Frobenius distance between the orthogonal projectors:
// (1/2) || a a^T - b b^T ||_F^2. Differs from p2s_distance by |p_a - p_b| / 2.
double projection_fnorm_distance(const Basis& a, const Basis& b);

// Dominant eigenspace of a weighted sum of projectors, sum_i w_i x_i x_i^T.
struct EigenspaceResult {
  Basis basis;
  Eigen::VectorXd eigenvalues;  // all n, sorted nonincreasing
  bool degenerate_gap;          // eigenvalue k == eigenvalue k+1 within 1e-12
};

// weights must lie on the unit simplex (within 1e-12) and k <= n.
EigenspaceResult weighted_dominant_eigenspace(const SubspaceCollection& collection,
                                              const Eigen::VectorXd& weights, int k);

// The extrinsic mean on Gr(k,n): the k dominant eigenvectors of the weighted
// average projector.
Basis extrinsic_mean(const SubspaceCollection& collection, int k,
                     const Eigen::VectorXd& weights);

}  // namespace gmeb

#endif  // GMEB_GEOMETRY_HPP
