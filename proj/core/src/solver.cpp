#include "gmeb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace gmeb {

void SolverConfig::validate() const {
  if (!(a > 0.0)) throw Error("step scale a must be positive");
  if (!(eta > 0.0)) throw Error("stopping tolerance eta must be positive");
  if (!(zeta > 0.0 && zeta < 1.0)) throw Error("step floor zeta must lie in (0,1)");
  if (!(beta >= 1.0)) throw Error("growth parameter beta must be >= 1");
  if (max_iter < 1) throw Error("max_iter must be >= 1");
  if (history_window < 1) throw Error("history_window must be >= 1");
}

DualWeights::DualWeights(Eigen::VectorXd lambda) : lambda_(std::move(lambda)) {
  if (lambda_.size() == 0) throw ZeroVector("empty weight vector");
  if (lambda_.minCoeff() < 0.0) throw Error("dual weights must be nonnegative");
  if (std::abs(lambda_.sum() - 1.0) > 1e-12) {
    throw Error("dual weights must sum to 1");
  }
}

DualWeights simplex_normalize(const Eigen::VectorXd& v) {
  Eigen::VectorXd w = v.cwiseMax(0.0);
  const double total = w.sum();
  if (!(total > 0.0)) {
    throw ZeroVector("cannot project a vector with no positive mass onto the simplex");
  }
  return DualWeights(w / total);
}

Eigen::VectorXd simplex_project(const Eigen::VectorXd& v) {
  const Eigen::Index m = v.size();
  std::vector<double> sorted(v.data(), v.data() + m);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0.0;
  double tau = 0.0;
  int support = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    running += sorted[static_cast<std::size_t>(j)];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[static_cast<std::size_t>(j)] - candidate > 0.0) {
      tau = candidate;
      support = static_cast<int>(j) + 1;
    }
  }
  if (support == 0) throw ZeroVector("simplex projection of an empty support");
  Eigen::VectorXd out = (v.array() - tau).cwiseMax(0.0);
  out /= out.sum();  // exact unit mass against roundoff
  return out;
}

DualCost dual_cost(const DualWeights& lambda, const SubspaceCollection& collection, int k) {
  EigenspaceResult eigen = weighted_dominant_eigenspace(collection, lambda.vector(), k);
  double value = 0.0;
  for (int i = 0; i < collection.size(); ++i) {
    value -= lambda[i] * static_cast<double>(std::min(k, collection[i].p()));
  }
  for (int i = 0; i < collection.size(); ++i) {
    if (lambda[i] != 0.0) {
      value += lambda[i] * (eigen.basis.matrix().transpose() * collection[i].matrix()).squaredNorm();
    }
  }
  return DualCost{value, std::move(eigen.basis), eigen.degenerate_gap};
}

Eigen::VectorXd subgradient(const Basis& u, const SubspaceCollection& collection) {
  Eigen::VectorXd g(collection.size());
  for (int i = 0; i < collection.size(); ++i) {
    g(i) = -p2s_distance(u, collection[i]);
  }
  return g;
}

double primal_cost(const Basis& u, const SubspaceCollection& collection) {
  double worst = 0.0;
  for (int i = 0; i < collection.size(); ++i) {
    worst = std::max(worst, p2s_distance(u, collection[i]));
  }
  return worst;
}

std::string to_string(ConvergedReason r) {
  switch (r) {
    case ConvergedReason::kGapBelowEta:
      return "GapBelowEta";
    case ConvergedReason::kStalled:
      return "Stalled";
    case ConvergedReason::kMaxIter:
      return "MaxIter";
  }
  return "unknown";
}

namespace {

// State of one evaluated iterate: weights, center, subgradient, costs.
struct Iterate {
  Eigen::VectorXd lambda;
  Basis center;
  Eigen::VectorXd g;
  double dual;    // f(lambda) = lambda . g
  double radius;  // max_i d_i at the center
  bool degenerate;
};

Iterate evaluate(const SubspaceCollection& collection, int k, Eigen::VectorXd lambda) {
  EigenspaceResult eigen =
      weighted_dominant_eigenspace(collection, lambda, k);
  Eigen::VectorXd g = subgradient(eigen.basis, collection);
  const double dual = lambda.dot(g);
  const double radius = -g.minCoeff();
  if (!std::isfinite(dual) || !std::isfinite(radius)) {
    throw NonFiniteCost("dual or primal cost became non-finite");
  }
  return Iterate{std::move(lambda), std::move(eigen.basis), std::move(g), dual, radius,
                 eigen.degenerate_gap};
}

}  // namespace

SolverResult solve(const SubspaceCollection& collection, int k, const SolverConfig& config,
                   const std::optional<DualWeights>& init_lambda,
                   const IterationObserver& observer) {
  config.validate();
  const int m = collection.size();
  const int n = collection.n();
  if (k < 1 || k > n) {
    throw DimensionMismatch("center dimension k must satisfy 1 <= k <= n");
  }
  if (init_lambda && init_lambda->size() != m) {
    throw DimensionMismatch("warm-start weights have the wrong length");
  }

  Eigen::VectorXd lambda0 = init_lambda
                                ? init_lambda->vector()
                                : Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));

  double a = config.a;
  Iterate cur = evaluate(collection, k, std::move(lambda0));

  Eigen::VectorXd best_lambda = cur.lambda;
  Basis best_center = cur.center;
  double best_dual = cur.dual;
  bool saw_degenerate = cur.degenerate;

  std::vector<TracePoint> trace;
  trace.push_back({0, cur.radius, cur.dual, 0.0});
  if (observer) observer({0, cur.lambda, cur.center, cur.radius, cur.dual, 0.0});

  // dual_history[t] = f(lambda^(t)) of the running iterate; the stall test
  // compares against the last history_window entries.
  std::vector<double> dual_history{cur.dual};

  int t = 0;
  ConvergedReason reason = ConvergedReason::kMaxIter;
  while (t < config.max_iter) {
    const double gap = cur.dual + cur.radius;  // f_dual - f_primal, both max-form
    if (gap <= config.eta) {
      reason = ConvergedReason::kGapBelowEta;
      break;
    }
    if (t >= config.history_window) {
      double window_drop = -std::numeric_limits<double>::infinity();
      for (int i = 1; i <= config.history_window; ++i) {
        window_drop = std::max(window_drop, dual_history[t - i] - cur.dual);
      }
      if (window_drop <= config.eta) {
        reason = ConvergedReason::kStalled;
        break;
      }
    }

    ++t;
    const double alpha_full = a / std::sqrt(static_cast<double>(t));
    const double prev_dual = cur.dual;
    Iterate next = evaluate(
        collection, k, simplex_project(cur.lambda - alpha_full * cur.g));
    double step_used = alpha_full;

    if (config.step_mode == StepMode::kBacktracking) {
      double alpha_try = alpha_full;
      double last_try_dual = next.dual;
      while (last_try_dual > prev_dual && alpha_try > config.zeta * alpha_full) {
        a /= 2.0;
        alpha_try = a / std::sqrt(static_cast<double>(t));
        Iterate trial = evaluate(
            collection, k, simplex_project(cur.lambda - alpha_try * cur.g));
        last_try_dual = trial.dual;
        if (trial.dual <= prev_dual) {
          a *= config.beta;
          next = std::move(trial);
          step_used = alpha_try;
        }
      }
      // When the search bottoms out the full a/sqrt(t) step stands even
      // though it raised the dual cost; lambda-best protects the output.
    }

    cur = std::move(next);
    saw_degenerate = saw_degenerate || cur.degenerate;
    if (cur.dual <= best_dual) {
      best_dual = cur.dual;
      best_lambda = cur.lambda;
      best_center = cur.center;
    }
    trace.push_back({t, cur.radius, cur.dual, step_used});
    dual_history.push_back(cur.dual);
    if (observer) observer({t, cur.lambda, cur.center, cur.radius, cur.dual, step_used});
  }

  const double best_radius = primal_cost(best_center, collection);
  return SolverResult{k,
                      DualWeights(best_lambda),
                      std::move(best_center),
                      best_radius,
                      best_dual,
                      best_dual + best_radius,
                      t,
                      reason,
                      std::move(trace),
                      saw_degenerate};
}

SweepOutcome warm_start_sweep(const SubspaceCollection& collection, int k_max,
                              const SolverConfig& config) {
  if (k_max < 1 || k_max > collection.max_dim()) {
    throw DimensionMismatch("sweep requires 1 <= k_max <= max item dimension");
  }
  SweepOutcome out;
  std::optional<DualWeights> init;  // k = 1 starts uniform
  for (int k = 1; k <= k_max; ++k) {
    try {
      out.results.push_back(solve(collection, k, config, init));
      init = out.results.back().lambda_best;
    } catch (const Error& e) {
      out.failures.push_back({k, e.what()});
    }
  }
  return out;
}

}  // namespace gmeb
