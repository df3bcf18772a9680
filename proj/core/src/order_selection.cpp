#include "gmeb/order_selection.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace gmeb {

double scaled_objective(const Basis& center, const SubspaceCollection& collection) {
  return primal_cost(center, collection) / static_cast<double>(center.p());
}

double complement_penalty(const Basis& center, const SubspaceCollection& collection) {
  const int n = center.n();
  const int k = center.p();
  if (k == n) {
    throw FullSpace("penalty undefined for a center spanning R^" + std::to_string(n));
  }
  const Basis comp = orthogonal_complement(center);
  double worst = std::numeric_limits<double>::infinity();
  for (int j = 0; j < collection.size(); ++j) {
    const int pt = std::min(n - k, collection[j].p());
    const double overlap =
        (comp.matrix().transpose() * collection[j].matrix()).squaredNorm();
    worst = std::min(worst, overlap / static_cast<double>(pt));
  }
  return std::clamp(worst, 0.0, 1.0);
}

Eigen::VectorXd average_projector_eigenvalues(const SubspaceCollection& collection,
                                              const Eigen::VectorXd& weights) {
  const int n = collection.n();
  if (weights.size() != collection.size()) {
    throw DimensionMismatch("weight vector length does not match collection size");
  }
  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < collection.size(); ++i) {
    if (weights(i) != 0.0) {
      avg.selfadjointView<Eigen::Lower>().rankUpdate(collection[i].matrix(), weights(i));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(avg.selfadjointView<Eigen::Lower>(),
                                                     Eigen::EigenvaluesOnly);
  return eig.eigenvalues().reverse();
}

double projector_mse(const Eigen::VectorXd& eigenvalues, int k) {
  double value = 0.0;
  for (Eigen::Index r = 0; r < eigenvalues.size(); ++r) {
    value += (r < k) ? (1.0 - eigenvalues(r)) : eigenvalues(r);
  }
  return value;
}

namespace {

Eigen::VectorXd uniform_weights(int m) {
  return Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
}

int argmin_small_k(const std::vector<double>& values) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(values.size()); ++k) {
    if (values[k] < values[best]) best = k;
  }
  return best;
}

}  // namespace

double mse_value(const SubspaceCollection& collection, int k) {
  return projector_mse(average_projector_eigenvalues(collection, uniform_weights(collection.size())), k);
}

int select_order_mse(const SubspaceCollection& collection) {
  const Eigen::VectorXd d =
      average_projector_eigenvalues(collection, uniform_weights(collection.size()));
  int count = 0;
  while (count < d.size() && d(count) > 0.5) ++count;
  return count;
}

int select_order_hybrid(const std::vector<SolverResult>& sweep,
                        const SubspaceCollection& collection) {
  const int k_max = static_cast<int>(sweep.size());
  std::vector<double> values(static_cast<std::size_t>(k_max) + 1);
  values[0] = projector_mse(
      average_projector_eigenvalues(collection, uniform_weights(collection.size())), 0);
  for (int k = 1; k <= k_max; ++k) {
    if (sweep[k - 1].k != k) throw Error("sweep must cover ranks 1..K contiguously");
    values[k] = projector_mse(
        average_projector_eigenvalues(collection, sweep[k - 1].lambda_best.vector()), k);
  }
  return argmin_small_k(values);
}

namespace {

// RMSE of the best-fit line through (positions, values); exact fits and
// single points give 0.
double segment_line_rmse(const Eigen::VectorXd& y, int begin, int len) {
  if (len <= 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < len; ++i) {
    const double x = begin + i;
    sx += x;
    sy += y(begin + i);
    sxx += x * x;
    sxy += x * y(begin + i);
  }
  const double denom = len * sxx - sx * sx;
  const double slope = (len * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / len;
  double sse = 0;
  for (int i = 0; i < len; ++i) {
    const double x = begin + i;
    const double r = y(begin + i) - (slope * x + intercept);
    sse += r * r;
  }
  return std::sqrt(sse / len);
}

}  // namespace

int select_order_svd_elbow(const SubspaceCollection& collection) {
  Eigen::MatrixXd concat(collection.n(), collection.sum_dims());
  int col = 0;
  for (int i = 0; i < collection.size(); ++i) {
    concat.middleCols(col, collection[i].p()) = collection[i].matrix();
    col += collection[i].p();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(concat);
  const Eigen::VectorXd sigma = svd.singularValues();
  const int r = static_cast<int>(sigma.size());
  if (r < 4) {
    throw TooFewValues("scree needs at least 4 singular values, got " + std::to_string(r));
  }

  int best_split = 2;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int c = 2; c <= r - 1; ++c) {
    const double left = segment_line_rmse(sigma, 0, c);
    const double right = segment_line_rmse(sigma, c, r - c);
    const double cost = (c * left + (r - c) * right) / r;
    if (cost < best_cost) {
      best_cost = cost;
      best_split = c;
    }
  }
  return best_split;
}

OrderReport select_order(const SubspaceCollection& collection, const OrderConfig& config) {
  const int k_max = collection.max_dim();
  if (k_max >= collection.n()) {
    throw FullSpace("order selection needs max item dimension < ambient dimension");
  }
  const int m = collection.size();

  std::vector<SolverResult> sweep;
  if (config.warm_start) {
    SweepOutcome outcome = warm_start_sweep(collection, k_max, config.solver);
    if (!outcome.failures.empty()) {
      throw Error("rank sweep failed at k=" + std::to_string(outcome.failures.front().k) +
                  ": " + outcome.failures.front().reason);
    }
    sweep = std::move(outcome.results);
  } else {
    sweep.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
      sweep.push_back(solve(collection, k, config.solver));
    }
  }

  OrderReport report;
  report.rows.reserve(static_cast<std::size_t>(k_max) + 1);

  const Eigen::VectorXd uniform = uniform_weights(m);
  const Eigen::VectorXd uniform_eigs = average_projector_eigenvalues(collection, uniform);

  OrderRow zero_row;
  zero_row.k = 0;
  zero_row.c_obj = 0.0;
  zero_row.c_pen = 1.0;
  zero_row.total = 1.0;
  zero_row.e_mse = projector_mse(uniform_eigs, 0);
  zero_row.e_hybrid = zero_row.e_mse;
  zero_row.lambda_used = uniform;
  report.rows.push_back(std::move(zero_row));

  for (int k = 1; k <= k_max; ++k) {
    const SolverResult& res = sweep[k - 1];
    OrderRow row;
    row.k = k;
    row.c_obj = scaled_objective(res.center, collection);
    row.c_pen = complement_penalty(res.center, collection);
    row.total = row.c_obj + row.c_pen;
    row.e_mse = projector_mse(uniform_eigs, k);
    row.e_hybrid = projector_mse(
        average_projector_eigenvalues(collection, res.lambda_best.vector()), k);
    row.lambda_used = res.lambda_best.vector();
    report.rows.push_back(std::move(row));
  }

  std::vector<double> totals, hybrids;
  for (const OrderRow& row : report.rows) {
    totals.push_back(row.total);
    hybrids.push_back(row.e_hybrid);
  }
  report.k_proposed = argmin_small_k(totals);
  report.k_hybrid = argmin_small_k(hybrids);
  report.k_mse = select_order_mse(collection);
  report.k_svd_elbow = select_order_svd_elbow(collection);
  return report;
}

}  // namespace gmeb
