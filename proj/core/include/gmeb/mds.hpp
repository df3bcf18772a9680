#ifndef GMEB_MDS_HPP
#define GMEB_MDS_HPP

#include <Eigen/Core>

#include "gmeb/basis.hpp"

namespace gmeb {

struct MdsEmbedding {
  Eigen::MatrixXd coords;  // M x 2
  // Top-2 eigenvalues of the centered Gram matrix were not both positive;
  // the dissimilarities are then not 2-D Euclidean and the plot is distorted.
  bool weak_spectrum;
};

// Classical multidimensional scaling of an M x M matrix of squared
// dissimilarities (symmetric, zero diagonal, nonnegative): double-center
// -1/2 J D J, take the top-2 eigenpairs, scale eigenvectors by the square
// roots of their eigenvalues. Signs are fixed by making each column's
// largest-magnitude entry positive, so the embedding is deterministic.
MdsEmbedding mds_embed(const Eigen::MatrixXd& distances);

// Pairwise squared-chordal dissimilarities min{p_i,p_j} - ||x_i^T x_j||_F^2
// for plotting a collection.
Eigen::MatrixXd pairwise_distance_matrix(const SubspaceCollection& collection);

}  // namespace gmeb

#endif  // GMEB_MDS_HPP
