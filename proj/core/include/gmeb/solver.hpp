#ifndef GMEB_SOLVER_HPP
#define GMEB_SOLVER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gmeb/geometry.hpp"

namespace gmeb {

enum class StepMode {
  // a/sqrt(t) with a back-tracking line search that halves the scale when the
  // dual cost would increase and regrows it by beta on accepted shrunk steps.
  kBacktracking,
  // plain nonsummable diminishing steps a/sqrt(t), no line search
  kDiminishing,
};

struct SolverConfig {
  double a = 1.0;           // initial step scale
  double eta = 1e-9;        // stopping tolerance for gap and stall tests
  double zeta = 1e-6;       // back-tracking abandons below zeta * full step
  double beta = 1.5;        // step scale regrowth on accepted back-tracked steps
  int max_iter = 5000;
  int history_window = 10;  // stall test looks this many iterates back
  StepMode step_mode = StepMode::kBacktracking;

  void validate() const;
};

// Nonnegative weights summing to 1 (within 1e-12).
class DualWeights {
 public:
  explicit DualWeights(Eigen::VectorXd lambda);
  const Eigen::VectorXd& vector() const { return lambda_; }
  int size() const { return static_cast<int>(lambda_.size()); }
  double operator[](int i) const { return lambda_(i); }

 private:
  Eigen::VectorXd lambda_;
};

// Clamps negative entries to zero and divides by the l1 norm.
// Throws ZeroVector when nothing positive remains.
DualWeights simplex_normalize(const Eigen::VectorXd& v);

// Euclidean projection onto the unit simplex (the solver's iterate
// projection). Unlike the l1 rescaling above this is the metric projection,
// which the subgradient convergence argument needs; plain rescaling has
// spurious fixed points wherever the distances are proportional to the
// weights.
Eigen::VectorXd simplex_project(const Eigen::VectorXd& v);

// Dual cost f(lambda) = -sum_i lambda_i min{k,p_i}
//                       + Tr(U^T (sum_i lambda_i x_i x_i^T) U)
// with U the dominant-k eigenspace of the weighted average projector. This is
// the maximization-form convention: f(lambda) = -sum_i lambda_i d_i(U) <= 0.
struct DualCost {
  double value;
  Basis center;
  bool degenerate_eigengap;
};
DualCost dual_cost(const DualWeights& lambda, const SubspaceCollection& collection, int k);

// Subgradient of the dual at the center u: g_i = -p2s_distance(u, x_i).
Eigen::VectorXd subgradient(const Basis& u, const SubspaceCollection& collection);

// Enclosing-ball radius of candidate center u: max_i p2s_distance(u, x_i).
double primal_cost(const Basis& u, const SubspaceCollection& collection);

enum class ConvergedReason { kGapBelowEta, kStalled, kMaxIter };

std::string to_string(ConvergedReason r);

struct TracePoint {
  int t;
  double primal;  // max distance at the iterate's center (ball-radius form)
  double dual;    // f(lambda^(t)), maximization-form sign (<= 0)
  double step;    // step size actually taken (0 for t = 0)
};

struct SolverResult {
  int k;
  DualWeights lambda_best;
  Basis center;        // dominant-k eigenspace at lambda_best
  double primal_cost;  // ball radius at center
  double dual_cost;    // f(lambda_best)
  double duality_gap;  // dual_cost + primal_cost >= -1e-10 by weak duality
  int iterations;
  ConvergedReason converged_reason;
  std::vector<TracePoint> trace;
  bool degenerate_eigengap;  // any visited iterate had a tied k-th eigenvalue
};

// Called once per outer iteration (including t = 0) with the accepted
// iterate. Used by the experiment harnesses for error-vs-truth traces.
struct IterationView {
  int t;
  const Eigen::VectorXd& lambda;
  const Basis& center;
  double primal;
  double dual;
  double step;
};
using IterationObserver = std::function<void(const IterationView&)>;

// Subgradient descent on the dual with lambda-best tracking. Stops when the
// duality gap falls to eta, when the dual cost of the running iterate has not
// improved by more than eta over the history window, or at max_iter.
SolverResult solve(const SubspaceCollection& collection, int k,
                   const SolverConfig& config = {},
                   const std::optional<DualWeights>& init_lambda = {},
                   const IterationObserver& observer = {});

// Solves for k = 1..k_max, seeding each k with the best weights from k-1.
struct SweepFailure {
  int k;
  std::string reason;
};
struct SweepOutcome {
  std::vector<SolverResult> results;  // successful ranks, ascending k
  std::vector<SweepFailure> failures;
};
SweepOutcome warm_start_sweep(const SubspaceCollection& collection, int k_max,
                              const SolverConfig& config = {});

}  // namespace gmeb

#endif  // GMEB_SOLVER_HPP
