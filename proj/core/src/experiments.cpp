#include "gmeb/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace gmeb {

int thread_budget() {
  if (const char* env = std::getenv("GMEB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

namespace {

// Runs fn(0..count-1) on up to thread_budget() workers. Each index writes to
// its own output slot so scheduling never changes results.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t trial_seed(const DatasetSpec& spec, int axis_index, int trial) {
  return mix_seed(spec.seed, (static_cast<std::uint64_t>(axis_index) << 32) |
                                 static_cast<std::uint64_t>(trial));
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace

std::vector<AccuracyTrial> run_accuracy(const ExperimentConfig& config) {
  if (config.trials < 1) throw Error("trials must be >= 1");
  std::vector<AccuracyTrial> out(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, [&](int trial) {
    DatasetSpec spec = config.dataset;
    spec.seed = trial_seed(config.dataset, 0, trial);
    const Dataset data = make_dataset(spec);
    if (!data.truth_center) throw Error("accuracy experiment needs a ground-truth center");
    const int k = config.solve_k > 0 ? config.solve_k : data.truth_k;

    AccuracyTrial rec;
    rec.seed = spec.seed;
    const auto start = std::chrono::steady_clock::now();
    double best_primal = std::numeric_limits<double>::infinity();
    double best_error = std::numeric_limits<double>::infinity();
    auto observer = [&](const IterationView& view) {
      if (view.primal < best_primal) {
        best_primal = view.primal;
        best_error = p2s_distance(*data.truth_center, view.center);
      }
      rec.error_to_truth.push_back(best_error);
      rec.elapsed_s.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      rec.dual.push_back(view.dual);
      rec.primal.push_back(view.primal);
    };
    const SolverResult result = solve(data.collection, k, config.solver, {}, observer);
    rec.initial_error = rec.error_to_truth.front();
    rec.final_error = p2s_distance(*data.truth_center, result.center);
    rec.duality_gap = result.duality_gap;
    rec.iterations = result.iterations;
    out[static_cast<std::size_t>(trial)] = std::move(rec);
  });
  return out;
}

void write_accuracy_csv(const std::string& path, const std::vector<AccuracyTrial>& trials) {
  auto out = open_csv(path);
  out << "iter,median_error,min_error,max_error,median_time_s\n";
  std::size_t longest = 0;
  for (const AccuracyTrial& t : trials) longest = std::max(longest, t.error_to_truth.size());
  for (std::size_t it = 0; it < longest; ++it) {
    std::vector<double> errs, times;
    errs.reserve(trials.size());
    times.reserve(trials.size());
    for (const AccuracyTrial& t : trials) {
      const std::size_t idx = std::min(it, t.error_to_truth.size() - 1);
      errs.push_back(t.error_to_truth[idx]);
      times.push_back(t.elapsed_s[idx]);
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%zu,%.12g,%.12g,%.12g,%.12g\n", it, median_of(errs),
                  *std::min_element(errs.begin(), errs.end()),
                  *std::max_element(errs.begin(), errs.end()), median_of(times));
    out << line;
  }
}

std::vector<WarmStartRecord> run_warmstart(const ExperimentConfig& config) {
  if (config.trials < 1) throw Error("trials must be >= 1");
  std::vector<std::vector<WarmStartRecord>> per_trial(
      static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, [&](int trial) {
    DatasetSpec spec = config.dataset;
    spec.seed = trial_seed(config.dataset, 0, trial);
    const Dataset data = make_dataset(spec);
    const int k_max = data.collection.max_dim();

    SweepOutcome warm = warm_start_sweep(data.collection, k_max, config.solver);
    if (!warm.failures.empty()) {
      throw Error("warm sweep failed at k=" + std::to_string(warm.failures.front().k));
    }
    std::vector<WarmStartRecord>& rows = per_trial[static_cast<std::size_t>(trial)];
    for (int k = 2; k <= k_max; ++k) {
      const SolverResult naive = solve(data.collection, k, config.solver);
      rows.push_back(WarmStartRecord{trial, k, naive.iterations,
                                     warm.results[static_cast<std::size_t>(k - 1)].iterations});
    }
  });
  std::vector<WarmStartRecord> out;
  for (const auto& rows : per_trial) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

void write_warmstart_csv(const std::string& path, const std::vector<WarmStartRecord>& rows) {
  auto out = open_csv(path);
  out << "trial,k,iters_naive,iters_warm\n";
  for (const WarmStartRecord& r : rows) {
    out << r.trial << ',' << r.k << ',' << r.iters_naive << ',' << r.iters_warm << '\n';
  }
}

double warmstart_win_fraction(const std::vector<WarmStartRecord>& rows) {
  if (rows.empty()) return 0.0;
  int wins = 0;
  for (const WarmStartRecord& r : rows) {
    if (r.iters_warm < r.iters_naive) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(rows.size());
}

std::vector<OrderSelectionRecord> run_order_selection(const ExperimentConfig& config) {
  if (config.trials < 1) throw Error("trials must be >= 1");
  std::vector<double> axis = config.axis;
  if (axis.empty()) {
    axis.push_back(config.axis_is_snr ? config.dataset.snr_db
                                      : static_cast<double>(config.dataset.n));
  }
  const int points = static_cast<int>(axis.size());
  const int jobs = points * config.trials;
  std::vector<OrderSelectionRecord> out(static_cast<std::size_t>(jobs));
  parallel_for(jobs, [&](int job) {
    const int axis_index = job / config.trials;
    const int trial = job % config.trials;
    DatasetSpec spec = config.dataset;
    if (config.axis_is_snr) {
      spec.snr_db = axis[static_cast<std::size_t>(axis_index)];
    } else {
      spec.n = static_cast<int>(axis[static_cast<std::size_t>(axis_index)]);
    }
    spec.seed = trial_seed(config.dataset, axis_index, trial);
    const Dataset data = make_dataset(spec);

    OrderConfig order_config;
    order_config.solver = config.solver;
    const OrderReport report = select_order(data.collection, order_config);
    out[static_cast<std::size_t>(job)] =
        OrderSelectionRecord{axis[static_cast<std::size_t>(axis_index)],
                             trial,
                             data.truth_k,
                             report.k_proposed,
                             report.k_hybrid,
                             report.k_mse,
                             report.k_svd_elbow};
  });
  return out;
}

void write_order_selection_csv(const std::string& path,
                               const std::vector<OrderSelectionRecord>& rows) {
  auto out = open_csv(path);
  out << "axis,trial,truth_k,proposed,hybrid,mse,svd_elbow\n";
  for (const OrderSelectionRecord& r : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%.10g,%d,%d,%d,%d,%d,%d\n", r.axis, r.trial, r.truth_k,
                  r.k_proposed, r.k_hybrid, r.k_mse, r.k_svd_elbow);
    out << line;
  }
}

std::vector<OrderRuleSummary> summarize_order_selection(
    const std::vector<OrderSelectionRecord>& rows) {
  struct Tally {
    int count = 0;
    int hits = 0;
    double sum = 0.0;
  };
  std::map<std::pair<double, std::string>, Tally> tallies;
  auto add = [&](double axis, const char* rule, int selected, int truth) {
    Tally& t = tallies[{axis, rule}];
    ++t.count;
    if (selected == truth) ++t.hits;
    t.sum += selected;
  };
  for (const OrderSelectionRecord& r : rows) {
    add(r.axis, "proposed", r.k_proposed, r.truth_k);
    add(r.axis, "hybrid", r.k_hybrid, r.truth_k);
    add(r.axis, "mse", r.k_mse, r.truth_k);
    add(r.axis, "svd_elbow", r.k_svd_elbow, r.truth_k);
  }
  std::vector<OrderRuleSummary> out;
  out.reserve(tallies.size());
  for (const auto& [key, t] : tallies) {
    out.push_back(OrderRuleSummary{key.first, key.second,
                                   static_cast<double>(t.hits) / t.count, t.sum / t.count});
  }
  return out;
}

void write_order_summary_csv(const std::string& path,
                             const std::vector<OrderRuleSummary>& rows) {
  auto out = open_csv(path);
  out << "axis,rule,accuracy,mean_order\n";
  for (const OrderRuleSummary& r : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%.10g,%s,%.10g,%.10g\n", r.axis, r.rule.c_str(),
                  r.accuracy, r.mean_order);
    out << line;
  }
}

}  // namespace gmeb
