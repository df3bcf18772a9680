#ifndef GMEB_ORDER_SELECTION_HPP
#define GMEB_ORDER_SELECTION_HPP

#include <vector>

#include "gmeb/solver.hpp"

namespace gmeb {

// Normalized ball radius of the rank-k center: max_i d(center, x_i) / k.
// Always in [0,1]; defined as 0 for k = 0 during report assembly.
double scaled_objective(const Basis& center, const SubspaceCollection& collection);

// Minimum similarity between any item and the dimensions the center leaves
// out: min_j ||complement(center)^T x_j||_F^2 / min{n-k, p_j}. In [0,1];
// defined as 1 for k = 0. Throws FullSpace when the center spans R^n.
double complement_penalty(const Basis& center, const SubspaceCollection& collection);

// Eigenvalues (nonincreasing, length n) of sum_i w_i x_i x_i^T.
Eigen::VectorXd average_projector_eigenvalues(const SubspaceCollection& collection,
                                              const Eigen::VectorXd& weights);

// Mean projector-Frobenius error at rank k, in eigenvalue form:
// sum_{r<=k} (1 - d_r) + sum_{r>k} d_r for the given eigenvalue vector.
double projector_mse(const Eigen::VectorXd& eigenvalues, int k);

// projector_mse of the uniform average projector.
double mse_value(const SubspaceCollection& collection, int k);

// Uniform-weight rule: the number of eigenvalues of the uniform average
// projector strictly above 1/2 (equivalently the smallest k with d_{k+1} < 1/2,
// eigenvalues at exactly 1/2 excluded).
int select_order_mse(const SubspaceCollection& collection);

// Dual-weighted rule: argmin over k = 0..K of projector_mse evaluated with
// the optimal weights from the rank-k solve (uniform at k = 0). Ties break
// to the smaller k. The sweep must cover k = 1..K contiguously.
int select_order_hybrid(const std::vector<SolverResult>& sweep,
                        const SubspaceCollection& collection);

// Scree-elbow baseline: singular values of the column concatenation
// [x_1 ... x_M]; each split c in 2..R-1 fits least-squares lines to the two
// segments and the split with minimal length-weighted RMSE wins. Never
// returns 0. Throws TooFewValues when fewer than 4 singular values exist.
int select_order_svd_elbow(const SubspaceCollection& collection);

struct OrderRow {
  int k;
  double c_obj;
  double c_pen;
  double total;            // c_obj + c_pen
  double e_mse;            // uniform-weight projector MSE at this k
  double e_hybrid;         // dual-weighted projector MSE at this k
  Eigen::VectorXd lambda_used;
};

struct OrderReport {
  std::vector<OrderRow> rows;  // k = 0..K
  int k_proposed;
  int k_hybrid;
  int k_mse;
  int k_svd_elbow;
};

struct OrderConfig {
  SolverConfig solver;
  bool warm_start = true;  // false: every rank starts from uniform weights
};

// Runs the rank sweep for k = 1..max_i p_i, assembles the per-k costs
// including the k = 0 row (0, 1, 1), and applies all four selection rules.
OrderReport select_order(const SubspaceCollection& collection,
                         const OrderConfig& config = {});

}  // namespace gmeb

#endif  // GMEB_ORDER_SELECTION_HPP
