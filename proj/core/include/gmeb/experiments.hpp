#ifndef GMEB_EXPERIMENTS_HPP
#define GMEB_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "gmeb/data_gen.hpp"
#include "gmeb/order_selection.hpp"
#include "gmeb/solver.hpp"

namespace gmeb {

// Worker threads used for independent trials: GMEB_THREADS if set, otherwise
// the hardware concurrency. Results never depend on the thread count.
int thread_budget();

enum class ExperimentKind { kAccuracy, kWarmStart, kOrderSelection, kNoCommonSubspace };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kAccuracy;
  int trials = 20;
  DatasetSpec dataset;       // template; the per-trial seed is derived from it
  SolverConfig solver;
  int solve_k = -1;          // accuracy experiment center rank; -1 = truth order
  std::vector<double> axis;  // ambient dims or SNR values; empty = single point
  bool axis_is_snr = false;
  std::string output_path;
};

// ---- Experiment 1: accuracy of the recovered center -----------------------

struct AccuracyTrial {
  std::uint64_t seed;
  // One entry per solver iteration (including iteration 0): distance between
  // the best-primal-so-far center and the ground truth, the cumulative wall
  // time, and the iterate's costs. Times are monotone nondecreasing.
  std::vector<double> error_to_truth;
  std::vector<double> elapsed_s;
  std::vector<double> dual;
  std::vector<double> primal;
  double initial_error;  // extrinsic-mean initialization, iteration 0
  double final_error;
  double duality_gap;
  int iterations;
};

std::vector<AccuracyTrial> run_accuracy(const ExperimentConfig& config);

// Aggregated CSV: iter, median/min/max error over trials (carrying each
// trial's final value forward once it has converged) and median elapsed time.
void write_accuracy_csv(const std::string& path, const std::vector<AccuracyTrial>& trials);

// ---- Experiment 2: warm start vs uniform initialization -------------------

struct WarmStartRecord {
  int trial;
  int k;
  int iters_naive;  // uniform initialization
  int iters_warm;   // seeded with the best weights from rank k-1
};

std::vector<WarmStartRecord> run_warmstart(const ExperimentConfig& config);
void write_warmstart_csv(const std::string& path, const std::vector<WarmStartRecord>& rows);

// Fraction of records where the warm start took strictly fewer iterations.
double warmstart_win_fraction(const std::vector<WarmStartRecord>& rows);

// ---- Experiment 3: order selection ----------------------------------------

struct OrderSelectionRecord {
  double axis;  // ambient dimension or SNR, depending on the config
  int trial;
  int truth_k;
  int k_proposed;
  int k_hybrid;
  int k_mse;
  int k_svd_elbow;
};

std::vector<OrderSelectionRecord> run_order_selection(const ExperimentConfig& config);
void write_order_selection_csv(const std::string& path,
                               const std::vector<OrderSelectionRecord>& rows);

struct OrderRuleSummary {
  double axis;
  std::string rule;
  double accuracy;    // fraction of trials selecting truth_k
  double mean_order;
};

std::vector<OrderRuleSummary> summarize_order_selection(
    const std::vector<OrderSelectionRecord>& rows);
void write_order_summary_csv(const std::string& path,
                             const std::vector<OrderRuleSummary>& rows);

}  // namespace gmeb

#endif  // GMEB_EXPERIMENTS_HPP
