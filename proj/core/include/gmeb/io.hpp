#ifndef GMEB_IO_HPP
#define GMEB_IO_HPP

#include <iosfwd>
#include <string>

#include "gmeb/data_gen.hpp"
#include "gmeb/order_selection.hpp"
#include "gmeb/solver.hpp"

namespace gmeb {

// Text collection format (.gss):
//   line 1:            "n M"
//   per item:          a line "p_i", then n lines of p_i floats (basis rows)
// Values are written with 17 significant digits so a round trip is lossless.
void write_collection(std::ostream& out, const SubspaceCollection& collection);
void write_collection_file(const std::string& path, const SubspaceCollection& collection);
SubspaceCollection read_collection(std::istream& in);
SubspaceCollection read_collection_file(const std::string& path);

// Solver result as JSON: {k, lambda, center{n,k,rows}, primal_cost,
// dual_cost, duality_gap, iterations, converged_reason, trace[{t,primal,dual,step}]}.
std::string result_to_json(const SolverResult& result);
void write_result_file(const std::string& path, const SolverResult& result);

// Order report as JSON: per-k rows {k, c_obj, c_pen, total, e_mse, e_hybrid,
// lambda} and the four selections.
std::string order_report_to_json(const OrderReport& report);
void write_order_report_file(const std::string& path, const OrderReport& report);

// Ground-truth sidecar written next to generated collections:
// {truth_k, truth_center (row-major floats or null), spec{...}}.
std::string truth_to_json(const Dataset& dataset);
void write_truth_file(const std::string& path, const Dataset& dataset);

struct TruthInfo {
  int truth_k;
  std::optional<Basis> truth_center;
};
TruthInfo read_truth_file(const std::string& path);

// Warm-start weights from a JSON array or a result JSON's "lambda" field.
DualWeights read_weights_json(const std::string& path);

}  // namespace gmeb

#endif  // GMEB_IO_HPP
