#include "gmeb/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace gmeb {

namespace {

void require_same_ambient(const Basis& a, const Basis& b) {
  if (a.n() != b.n()) {
    throw DimensionMismatch("operands live in different ambient spaces: " +
                            std::to_string(a.n()) + " vs " + std::to_string(b.n()));
  }
}

constexpr double kSingularOvershootTol = 1e-12;

}  // namespace

AngleVector principal_angles(const Basis& a, const Basis& b) {
  require_same_ambient(a, b);
  const Basis& big = a.p() >= b.p() ? a : b;
  const Basis& small = a.p() >= b.p() ? b : a;

  const Eigen::MatrixXd cross = big.matrix().transpose() * small.matrix();
  Eigen::JacobiSVD<Eigen::MatrixXd> cos_svd(cross);
  const Eigen::VectorXd& sigma = cos_svd.singularValues();  // nonincreasing

  // arccos of a cosine near 1 loses half the digits; small angles are
  // recovered from the sines, the singular values of the residual of the
  // smaller basis against the larger one.
  const Eigen::MatrixXd residual = small.matrix() - big.matrix() * cross;
  Eigen::JacobiSVD<Eigen::MatrixXd> sin_svd(residual);
  const Eigen::VectorXd& mu = sin_svd.singularValues();  // nonincreasing

  const Eigen::Index q = sigma.size();
  AngleVector out;
  out.angles.reserve(static_cast<std::size_t>(q));
  for (Eigen::Index i = 0; i < q; ++i) {
    double c = sigma(i);
    if (c > 1.0) {
      if (c > 1.0 + kSingularOvershootTol) {
        throw Error("cosine of a principal angle exceeds 1 beyond roundoff: " +
                    std::to_string(c));
      }
      c = 1.0;
    }
    if (c * c >= 0.5) {
      const double s = std::min(mu(q - 1 - i), 1.0);  // ascending counterpart
      out.angles.push_back(std::asin(s));
    } else {
      out.angles.push_back(std::acos(c));
    }
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

double p2s_distance(const Basis& u, const Basis& x) {
  require_same_ambient(u, x);
  const double overlap = (u.matrix().transpose() * x.matrix()).squaredNorm();
  const double cap = static_cast<double>(std::min(u.p(), x.p()));
  return std::clamp(cap - overlap, 0.0, cap);
}

Basis closest_point(const Basis& u, const Basis& x) {
  require_same_ambient(u, x);
  const int k = u.p();
  const int p = x.p();
  const Eigen::MatrixXd cross = u.matrix().transpose() * x.matrix();  // k x p

  if (p >= k) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeThinV);
    return Basis(x.matrix() * svd.matrixV().leftCols(k));
  }

  // p < k: keep all of x and pad with the trailing left principal directions
  // of u, then repair roundoff by QR.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeThinV);
  Eigen::MatrixXd padded(u.n(), k);
  padded.leftCols(p) = x.matrix() * svd.matrixV();
  padded.rightCols(k - p) = u.matrix() * svd.matrixU().rightCols(k - p);
  try {
    return orthonormalize(padded, 1e-10);
  } catch (const RankDeficient&) {
    throw DegenerateCompletion("padding directions are linearly dependent on col(x)");
  }
}

Basis orthogonal_complement(const Basis& u) {
  const int n = u.n();
  const int k = u.p();
  if (k == n) {
    throw FullSpace("basis already spans R^" + std::to_string(n));
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(u.matrix());
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return Basis(q.rightCols(n - k));
}

double projection_fnorm_distance(const Basis& a, const Basis& b) {
  require_same_ambient(a, b);
  const double overlap = (a.matrix().transpose() * b.matrix()).squaredNorm();
  return std::max(0.0, 0.5 * static_cast<double>(a.p() + b.p()) - overlap);
}

EigenspaceResult weighted_dominant_eigenspace(const SubspaceCollection& collection,
                                              const Eigen::VectorXd& weights, int k) {
  const int m = collection.size();
  const int n = collection.n();
  if (weights.size() != m) {
    throw DimensionMismatch("weight vector length does not match collection size");
  }
  if (k < 1 || k > n) {
    throw DimensionMismatch("eigenspace dimension k must satisfy 1 <= k <= n");
  }
  if (weights.minCoeff() < -1e-12 || std::abs(weights.sum() - 1.0) > 1e-12) {
    throw Error("weights must lie on the unit simplex");
  }

  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    if (weights(i) != 0.0) {
      avg.selfadjointView<Eigen::Lower>().rankUpdate(collection[i].matrix(), weights(i));
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      avg.selfadjointView<Eigen::Lower>());
  if (eig.info() != Eigen::Success) {
    throw Error("eigendecomposition of the average projector failed");
  }

  // Eigen sorts ascending; flip to nonincreasing.
  Eigen::VectorXd values = eig.eigenvalues().reverse();
  Eigen::MatrixXd top(n, k);
  for (int j = 0; j < k; ++j) top.col(j) = eig.eigenvectors().col(n - 1 - j);

  const bool degenerate = k < n && std::abs(values(k - 1) - values(k)) <= 1e-12;
  return EigenspaceResult{Basis(std::move(top)), std::move(values), degenerate};
}

Basis extrinsic_mean(const SubspaceCollection& collection, int k,
                     const Eigen::VectorXd& weights) {
  return weighted_dominant_eigenspace(collection, weights, k).basis;
}

}  // namespace gmeb
