#ifndef GMEB_BASIS_HPP
#define GMEB_BASIS_HPP

#include <vector>

#include <Eigen/Core>

#include "gmeb/errors.hpp"

namespace gmeb {

// Orthonormality tolerance accepted by the Basis constructor (max-entry norm
// of B^T B - I). Freshly orthonormalized matrices are far below this.
inline constexpr double kBasisOrthoTol = 1e-10;

// An n x p matrix with orthonormal columns; represents a p-dimensional linear
// subspace of R^n, i.e. a point on Gr(p,n). Value type, cheap to copy at the
// problem sizes this library targets.
class Basis {
 public:
  // Validates 1 <= p <= n and column orthonormality to kBasisOrthoTol.
  explicit Basis(Eigen::MatrixXd columns);

  int n() const { return static_cast<int>(cols_.rows()); }
  int p() const { return static_cast<int>(cols_.cols()); }
  const Eigen::MatrixXd& matrix() const { return cols_; }

 private:
  Eigen::MatrixXd cols_;
};

// Builds a Basis spanning col(matrix) via thin QR with a positive-diagonal
// sign convention, so an already-orthonormal input is returned unchanged up
// to roundoff and column scaling never flips directions.
//
// Throws RankDeficient when the smallest singular value of the triangular
// factor falls below tol times the largest.
Basis orthonormalize(const Eigen::MatrixXd& matrix, double tol = 1e-12);

// A collection of subspaces of a common ambient space, possibly of differing
// dimension.
class SubspaceCollection {
 public:
  explicit SubspaceCollection(std::vector<Basis> items);

  int n() const { return items_.front().n(); }
  int size() const { return static_cast<int>(items_.size()); }
  const Basis& operator[](int i) const { return items_[static_cast<std::size_t>(i)]; }
  const std::vector<Basis>& items() const { return items_; }

  std::vector<int> dims() const;
  int max_dim() const;
  int sum_dims() const;

 private:
  std::vector<Basis> items_;
};

// Principal angles in radians, sorted nondecreasing, each in [0, pi/2].
struct AngleVector {
  std::vector<double> angles;
};

}  // namespace gmeb

#endif  // GMEB_BASIS_HPP
