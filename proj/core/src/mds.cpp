#include "gmeb/mds.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace gmeb {

MdsEmbedding mds_embed(const Eigen::MatrixXd& distances) {
  const auto m = distances.rows();
  if (m < 2 || distances.cols() != m) {
    throw DimensionMismatch("mds_embed needs a square matrix with at least 2 rows");
  }
  if ((distances - distances.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error("dissimilarity matrix must be symmetric");
  }
  if (distances.diagonal().cwiseAbs().maxCoeff() > 1e-9) {
    throw Error("dissimilarity matrix must have a zero diagonal");
  }
  if (distances.minCoeff() < -1e-12) {
    throw Error("dissimilarities must be nonnegative");
  }

  // B = -1/2 J D J with J = I - 11^T/m.
  Eigen::MatrixXd b = -0.5 * distances;
  const Eigen::VectorXd row_mean = b.rowwise().mean();
  b.colwise() -= row_mean;
  const Eigen::RowVectorXd col_mean = b.colwise().mean();
  b.rowwise() -= col_mean;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (b + b.transpose()));
  const Eigen::VectorXd& values = eig.eigenvalues();  // ascending

  MdsEmbedding out;
  out.coords.resize(m, 2);
  out.weak_spectrum = false;
  for (int j = 0; j < 2; ++j) {
    const auto idx = m - 1 - j;
    const double lambda = values(idx);
    if (lambda <= 1e-12 * std::max(values(m - 1), 1e-300)) out.weak_spectrum = true;
    Eigen::VectorXd col = eig.eigenvectors().col(idx) * std::sqrt(std::max(lambda, 0.0));
    Eigen::Index peak;
    col.cwiseAbs().maxCoeff(&peak);
    if (col(peak) < 0.0) col = -col;
    out.coords.col(j) = col;
  }
  return out;
}

Eigen::MatrixXd pairwise_distance_matrix(const SubspaceCollection& collection) {
  const int m = collection.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double overlap =
          (collection[i].matrix().transpose() * collection[j].matrix()).squaredNorm();
      const double cap = std::min(collection[i].p(), collection[j].p());
      d(i, j) = d(j, i) = std::max(0.0, cap - overlap);
    }
  }
  return d;
}

}  // namespace gmeb
