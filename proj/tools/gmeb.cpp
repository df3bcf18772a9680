// Command line front end: solve / order / gen / experiment / mds.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmeb/experiments.hpp"
#include "gmeb/io.hpp"
#include "gmeb/mds.hpp"

namespace {

using namespace gmeb;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// "3,4,5" or "10..20".
std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    for (int d = lo; d <= hi; ++d) out.push_back(d);
    return out;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string::npos ? text.size() : comma;
    out.push_back(std::stoi(text.substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string::npos ? text.size() : comma;
    out.push_back(std::stod(text.substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

struct SolverFlags {
  SolverConfig config;
  std::string step_mode = "backtracking";

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", config.a, "initial step scale");
    cmd->add_option("--eta", config.eta, "stopping tolerance");
    cmd->add_option("--zeta", config.zeta, "back-tracking floor ratio");
    cmd->add_option("--beta", config.beta, "step regrowth factor");
    cmd->add_option("--max-iter", config.max_iter, "iteration cap");
    cmd->add_option("--step-mode", step_mode, "backtracking|diminishing")
        ->check(CLI::IsMember({"backtracking", "diminishing"}));
  }
  SolverConfig resolve() const {
    SolverConfig c = config;
    c.step_mode =
        step_mode == "diminishing" ? StepMode::kDiminishing : StepMode::kBacktracking;
    return c;
  }
};

struct DatasetFlags {
  std::string model = "nested-ball";
  DatasetSpec spec;
  std::string dims_text;

  void attach(CLI::App* cmd, bool with_model = true) {
    if (with_model) {
      cmd->add_option("--model", model, "nested-ball|arc|random")
          ->check(CLI::IsMember({"nested-ball", "arc", "random"}));
    }
    cmd->add_option("--n", spec.n, "ambient dimension");
    cmd->add_option("--k0", spec.k0, "common-subspace dimension");
    cmd->add_option("--k1", spec.k1, "large-ball manifold dimension (default k0)");
    cmd->add_option("--k2", spec.k2, "small-ball manifold dimension (default k0)");
    cmd->add_option("--eps1", spec.eps1, "outer radius (squared chordal)");
    cmd->add_option("--eps2", spec.eps2, "inner radius (squared chordal)");
    cmd->add_option("--m1", spec.m1, "outer-boundary samples");
    cmd->add_option("--m2", spec.m2, "inner-ball / arc samples");
    cmd->add_option("--m3", spec.m3, "interior samples");
    cmd->add_option("--dims", dims_text, "completion dims, e.g. 3,4,5 or 10..20");
    cmd->add_flag("--orthogonal-completion", spec.orthogonal_completion,
                  "draw completion directions from a shared orthogonal pool");
    cmd->add_option("--snr-db", spec.snr_db, "SNR in dB (omit for noise-free)");
    cmd->add_option("--seed", spec.seed, "RNG seed");
  }
  DatasetSpec resolve() const {
    DatasetSpec s = spec;
    s.model = model == "arc"      ? DataModel::kArc
              : model == "random" ? DataModel::kRandom
                                  : DataModel::kNestedBall;
    s.dims = parse_dims(dims_text);
    return s;
  }
};

void print_solver_summary(const SolverResult& r) {
  std::printf("k %d\n", r.k);
  std::printf("primal_cost %.15g\n", r.primal_cost);
  std::printf("dual_cost %.15g\n", r.dual_cost);
  std::printf("duality_gap %.15g\n", r.duality_gap);
  std::printf("iterations %d\n", r.iterations);
  std::printf("converged_reason %s\n", to_string(r.converged_reason).c_str());
}

int run(int argc, char** argv) {
  CLI::App app{"Minimax subspace center: dual subgradient solver, order selection, "
               "synthetic data and experiment harnesses"};
  app.require_subcommand(1);

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand("solve", "solve the minimax-center problem at rank k");
  std::string solve_input, solve_out, warm_start_path;
  int solve_k = 1;
  SolverFlags solve_flags;
  solve_cmd->add_option("--input", solve_input, "collection file (.gss)")->required();
  solve_cmd->add_option("--k", solve_k, "center dimension")->required();
  solve_cmd->add_option("--warm-start", warm_start_path, "JSON weights to initialize from");
  solve_cmd->add_option("--out", solve_out, "write the result JSON here");
  solve_flags.attach(solve_cmd);

  // ---- order ----
  auto* order_cmd = app.add_subcommand("order", "select the center dimension");
  std::string order_input, order_out, order_rule = "all";
  bool no_warm_start = false;
  SolverFlags order_flags;
  order_cmd->add_option("--input", order_input, "collection file (.gss)")->required();
  order_cmd->add_option("--rule", order_rule, "proposed|hybrid|mse|svd-elbow|all")
      ->check(CLI::IsMember({"proposed", "hybrid", "mse", "svd-elbow", "all"}));
  order_cmd->add_flag("--no-warm-start", no_warm_start,
                      "start every rank from uniform weights");
  order_cmd->add_option("--out", order_out, "write the report JSON here");
  order_flags.attach(order_cmd);

  // ---- gen ----
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic collection + truth sidecar");
  DatasetFlags gen_flags;
  std::string gen_out;
  gen_flags.attach(gen_cmd);
  gen_cmd->add_option("--out", gen_out, "output collection file (.gss)")->required();

  // ---- experiment ----
  auto* exp_cmd = app.add_subcommand("experiment", "run a full experiment to CSV");
  std::string exp_type = "accuracy", exp_out = "experiment.csv";
  std::string axis_n_text, axis_snr_text;
  int exp_trials = -1;
  int exp_k = -1;
  DatasetFlags exp_data;
  SolverFlags exp_solver;
  exp_cmd->add_option("--type", exp_type,
                      "accuracy|warmstart|order-selection|no-common-subspace")
      ->check(CLI::IsMember({"accuracy", "warmstart", "order-selection",
                             "no-common-subspace"}));
  exp_cmd->add_option("--trials", exp_trials, "Monte Carlo trials (default per type)");
  exp_cmd->add_option("--k", exp_k, "solve rank for the accuracy experiment");
  exp_cmd->add_option("--axis-n", axis_n_text, "ambient dimensions, e.g. 30,100,200");
  exp_cmd->add_option("--axis-snr", axis_snr_text, "SNR axis in dB, e.g. -5,0,5,10");
  exp_cmd->add_option("--out", exp_out, "output CSV path");
  exp_data.attach(exp_cmd, /*with_model=*/true);
  exp_solver.attach(exp_cmd);

  // ---- mds ----
  auto* mds_cmd = app.add_subcommand("mds", "2-D embedding of a collection for plotting");
  std::string mds_input, mds_out = "mds.csv";
  mds_cmd->add_option("--input", mds_input, "collection file (.gss)")->required();
  mds_cmd->add_option("--out", mds_out, "output CSV of x,y coordinates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (solve_cmd->parsed()) {
    const SubspaceCollection collection = read_collection_file(solve_input);
    std::optional<DualWeights> init;
    if (!warm_start_path.empty()) init = read_weights_json(warm_start_path);
    const SolverResult result = solve(collection, solve_k, solve_flags.resolve(), init);
    print_solver_summary(result);
    if (!solve_out.empty()) write_result_file(solve_out, result);
    return kExitOk;
  }

  if (order_cmd->parsed()) {
    const SubspaceCollection collection = read_collection_file(order_input);
    OrderConfig config;
    config.solver = order_flags.resolve();
    config.warm_start = !no_warm_start;
    const OrderReport report = select_order(collection, config);
    std::printf("k c_obj c_pen total e_mse e_hybrid\n");
    for (const OrderRow& row : report.rows) {
      std::printf("%d %.6f %.6f %.6f %.6f %.6f\n", row.k, row.c_obj, row.c_pen, row.total,
                  row.e_mse, row.e_hybrid);
    }
    if (order_rule == "proposed" || order_rule == "all")
      std::printf("k_proposed %d\n", report.k_proposed);
    if (order_rule == "hybrid" || order_rule == "all")
      std::printf("k_hybrid %d\n", report.k_hybrid);
    if (order_rule == "mse" || order_rule == "all") std::printf("k_mse %d\n", report.k_mse);
    if (order_rule == "svd-elbow" || order_rule == "all")
      std::printf("k_svd_elbow %d\n", report.k_svd_elbow);
    if (!order_out.empty()) write_order_report_file(order_out, report);
    return kExitOk;
  }

  if (gen_cmd->parsed()) {
    const Dataset dataset = make_dataset(gen_flags.resolve());
    write_collection_file(gen_out, dataset.collection);
    write_truth_file(gen_out + ".truth.json", dataset);
    std::printf("wrote %s (%d items) and %s\n", gen_out.c_str(), dataset.collection.size(),
                (gen_out + ".truth.json").c_str());
    return kExitOk;
  }

  if (exp_cmd->parsed()) {
    ExperimentConfig config;
    config.solver = exp_solver.resolve();
    config.solve_k = exp_k;
    config.dataset = exp_data.resolve();

    const bool custom_dataset = exp_cmd->count("--n") || exp_cmd->count("--m1");
    if (exp_type == "accuracy") {
      config.experiment = ExperimentKind::kAccuracy;
      config.trials = exp_trials > 0 ? exp_trials : 20;
      if (!custom_dataset) {
        config.dataset.model = DataModel::kNestedBall;
        config.dataset.n = 10;
        config.dataset.k0 = 3;
        config.dataset.eps1 = 1.0;
        config.dataset.eps2 = 0.125;
        config.dataset.m1 = 70;
        config.dataset.m2 = 30;
      }
      config.solver.max_iter = exp_cmd->count("--max-iter") ? config.solver.max_iter : 500;
      const auto trials = run_accuracy(config);
      write_accuracy_csv(exp_out, trials);
      std::printf("wrote %s\n", exp_out.c_str());
      return kExitOk;
    }
    if (exp_type == "warmstart") {
      config.experiment = ExperimentKind::kWarmStart;
      config.trials = exp_trials > 0 ? exp_trials : 100;
      if (!custom_dataset) {
        config.dataset.model = DataModel::kNestedBall;
        config.dataset.n = 10;
        config.dataset.k0 = 4;
        config.dataset.eps1 = 1.0;
        config.dataset.eps2 = 0.25;
        config.dataset.m1 = 35;
        config.dataset.m2 = 15;
        config.dataset.dims = {4, 5, 6};
      }
      const auto rows = run_warmstart(config);
      write_warmstart_csv(exp_out, rows);
      std::printf("wrote %s (warm start won %.1f%% of pairs)\n", exp_out.c_str(),
                  100.0 * warmstart_win_fraction(rows));
      return kExitOk;
    }

    // order-selection and no-common-subspace
    config.experiment = exp_type == "no-common-subspace"
                            ? ExperimentKind::kNoCommonSubspace
                            : ExperimentKind::kOrderSelection;
    config.trials = exp_trials > 0 ? exp_trials : 20;
    if (!custom_dataset) {
      if (exp_type == "no-common-subspace") {
        config.dataset.model = DataModel::kRandom;
        config.dataset.n = 40;
        config.dataset.k0 = 3;
        config.dataset.m1 = 50;
        config.dataset.dims = {3, 4, 5};
        if (axis_n_text.empty()) config.axis = {40};
      } else {
        config.dataset.model = DataModel::kNestedBall;
        config.dataset.k0 = 10;
        config.dataset.k2 = 15;
        config.dataset.eps1 = 1.0;
        config.dataset.eps2 = 0.5;
        config.dataset.m1 = 10;
        config.dataset.m2 = 10;
        config.dataset.dims = {10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
        config.dataset.snr_db = 9.0;
        if (axis_n_text.empty()) config.axis = {30, 100, 200};
      }
    }
    if (!axis_n_text.empty()) {
      config.axis = parse_doubles(axis_n_text);
      config.axis_is_snr = false;
    } else if (!axis_snr_text.empty()) {
      config.axis = parse_doubles(axis_snr_text);
      config.axis_is_snr = true;
    }
    const auto rows = run_order_selection(config);
    write_order_selection_csv(exp_out, rows);
    const std::string summary_path = exp_out + ".summary.csv";
    write_order_summary_csv(summary_path, summarize_order_selection(rows));
    std::printf("wrote %s and %s\n", exp_out.c_str(), summary_path.c_str());
    return kExitOk;
  }

  if (mds_cmd->parsed()) {
    const SubspaceCollection collection = read_collection_file(mds_input);
    const MdsEmbedding e = mds_embed(pairwise_distance_matrix(collection));
    if (e.weak_spectrum) {
      std::fprintf(stderr, "warning: top-2 eigenvalues not both positive; "
                           "embedding is degenerate\n");
    }
    std::ofstream out(mds_out);
    if (!out) throw Error("cannot open " + mds_out + " for writing");
    out << "x,y\n";
    for (Eigen::Index i = 0; i < e.coords.rows(); ++i) {
      char line[96];
      std::snprintf(line, sizeof(line), "%.12g,%.12g\n", e.coords(i, 0), e.coords(i, 1));
      out << line;
    }
    std::printf("wrote %s\n", mds_out.c_str());
    return kExitOk;
  }

  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const NonFiniteCost& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const RankDeficient& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const DegenerateCompletion& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}
