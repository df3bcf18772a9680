#include "gmeb/basis.hpp"

#include <Eigen/Dense>

namespace gmeb {

Basis::Basis(Eigen::MatrixXd columns) : cols_(std::move(columns)) {
  const auto n = cols_.rows();
  const auto p = cols_.cols();
  if (p < 1 || p > n) {
    throw DimensionMismatch("Basis requires 1 <= p <= n, got n=" + std::to_string(n) +
                            " p=" + std::to_string(p));
  }
  const double defect =
      (cols_.transpose() * cols_ - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff();
  if (defect > kBasisOrthoTol) {
    throw Error("Basis columns are not orthonormal (defect " + std::to_string(defect) + ")");
  }
}

Basis orthonormalize(const Eigen::MatrixXd& matrix, double tol) {
  const auto n = matrix.rows();
  const auto p = matrix.cols();
  if (p < 1 || p > n) {
    throw DimensionMismatch("orthonormalize requires 1 <= p <= n");
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(matrix);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
  const Eigen::MatrixXd r =
      qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();

  // Rank test on the small triangular factor; QR without pivoting keeps the
  // column order the caller chose.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const auto& sv = svd.singularValues();
  if (sv(p - 1) <= tol * sv(0)) {
    throw RankDeficient("matrix has numerical rank < " + std::to_string(p));
  }

  for (Eigen::Index j = 0; j < p; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return Basis(std::move(q));
}

SubspaceCollection::SubspaceCollection(std::vector<Basis> items) : items_(std::move(items)) {
  if (items_.empty()) {
    throw Error("SubspaceCollection requires at least one subspace");
  }
  const int n = items_.front().n();
  for (const Basis& b : items_) {
    if (b.n() != n) {
      throw DimensionMismatch("all subspaces must share the ambient dimension");
    }
  }
}

std::vector<int> SubspaceCollection::dims() const {
  std::vector<int> out;
  out.reserve(items_.size());
  for (const Basis& b : items_) out.push_back(b.p());
  return out;
}

int SubspaceCollection::max_dim() const {
  int m = 0;
  for (const Basis& b : items_) m = std::max(m, b.p());
  return m;
}

int SubspaceCollection::sum_dims() const {
  int s = 0;
  for (const Basis& b : items_) s += b.p();
  return s;
}

}  // namespace gmeb
