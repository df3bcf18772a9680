#include "gmeb/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gmeb {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Reads the next line, tracking the 1-based line number.
bool next_line(std::istream& in, std::string& line, int& lineno) {
  if (!std::getline(in, line)) return false;
  ++lineno;
  return true;
}

nlohmann::json basis_to_json(const Basis& b) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < b.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < b.p(); ++j) row.push_back(b.matrix()(i, j));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"n", b.n()}, {"k", b.p()}, {"rows", std::move(rows)}};
}

Basis basis_from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j.contains("k") || !j.contains("rows")) {
    throw SchemaError("basis object needs n, k and rows");
  }
  const int n = j.at("n").get<int>();
  const int k = j.at("k").get<int>();
  const auto& rows = j.at("rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw SchemaError("basis rows must be an array of n rows");
  }
  Eigen::MatrixXd m(n, k);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != k) {
      throw SchemaError("basis row " + std::to_string(i) + " has the wrong length");
    }
    for (int c = 0; c < k; ++c) m(i, c) = rows[i][c].get<double>();
  }
  return Basis(std::move(m));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path + " for reading");
  return in;
}

nlohmann::json parse_json_file(const std::string& path) {
  auto in = open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return j;
}

}  // namespace

void write_collection(std::ostream& out, const SubspaceCollection& collection) {
  out << collection.n() << ' ' << collection.size() << '\n';
  for (int i = 0; i < collection.size(); ++i) {
    const Basis& b = collection[i];
    out << b.p() << '\n';
    for (int r = 0; r < b.n(); ++r) {
      for (int c = 0; c < b.p(); ++c) {
        if (c) out << ' ';
        out << fmt17(b.matrix()(r, c));
      }
      out << '\n';
    }
  }
}

void write_collection_file(const std::string& path, const SubspaceCollection& collection) {
  auto out = open_out(path);
  write_collection(out, collection);
}

SubspaceCollection read_collection(std::istream& in) {
  int lineno = 0;
  std::string line;
  if (!next_line(in, line, lineno)) throw ParseError("empty input", 1);

  int n = 0, m = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra) || n < 1 || m < 1) {
      throw ParseError("expected header 'n M' with positive integers", lineno);
    }
  }

  std::vector<Basis> items;
  items.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    if (!next_line(in, line, lineno)) {
      throw ParseError("missing dimension line for item " + std::to_string(i + 1), lineno + 1);
    }
    int p = 0;
    {
      std::istringstream dim(line);
      std::string extra;
      if (!(dim >> p) || (dim >> extra) || p < 1 || p > n) {
        throw ParseError("expected a subspace dimension in [1," + std::to_string(n) + "]",
                         lineno);
      }
    }
    Eigen::MatrixXd mat(n, p);
    for (int r = 0; r < n; ++r) {
      if (!next_line(in, line, lineno)) {
        throw ParseError("missing basis row", lineno + 1);
      }
      std::istringstream row(line);
      for (int c = 0; c < p; ++c) {
        if (!(row >> mat(r, c))) {
          throw ParseError("expected " + std::to_string(p) + " floats", lineno);
        }
      }
      std::string extra;
      if (row >> extra) {
        throw ParseError("trailing tokens after " + std::to_string(p) + " floats", lineno);
      }
    }
    try {
      items.emplace_back(std::move(mat));
    } catch (const Error& e) {
      throw ParseError(std::string("item ") + std::to_string(i + 1) + ": " + e.what(), lineno);
    }
  }
  return SubspaceCollection(std::move(items));
}

SubspaceCollection read_collection_file(const std::string& path) {
  auto in = open_in(path);
  return read_collection(in);
}

std::string result_to_json(const SolverResult& result) {
  nlohmann::json trace = nlohmann::json::array();
  for (const TracePoint& tp : result.trace) {
    trace.push_back({{"t", tp.t}, {"primal", tp.primal}, {"dual", tp.dual}, {"step", tp.step}});
  }
  nlohmann::json lambda = nlohmann::json::array();
  for (int i = 0; i < result.lambda_best.size(); ++i) lambda.push_back(result.lambda_best[i]);

  nlohmann::json j{{"k", result.k},
                   {"lambda", std::move(lambda)},
                   {"center", basis_to_json(result.center)},
                   {"primal_cost", result.primal_cost},
                   {"dual_cost", result.dual_cost},
                   {"duality_gap", result.duality_gap},
                   {"iterations", result.iterations},
                   {"converged_reason", to_string(result.converged_reason)},
                   {"trace", std::move(trace)}};
  return j.dump(2);
}

void write_result_file(const std::string& path, const SolverResult& result) {
  open_out(path) << result_to_json(result) << '\n';
}

std::string order_report_to_json(const OrderReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const OrderRow& row : report.rows) {
    nlohmann::json lambda = nlohmann::json::array();
    for (Eigen::Index i = 0; i < row.lambda_used.size(); ++i) lambda.push_back(row.lambda_used(i));
    rows.push_back({{"k", row.k},
                    {"c_obj", row.c_obj},
                    {"c_pen", row.c_pen},
                    {"total", row.total},
                    {"e_mse", row.e_mse},
                    {"e_hybrid", row.e_hybrid},
                    {"lambda", std::move(lambda)}});
  }
  nlohmann::json j{{"rows", std::move(rows)},
                   {"k_proposed", report.k_proposed},
                   {"k_hybrid", report.k_hybrid},
                   {"k_mse", report.k_mse},
                   {"k_svd_elbow", report.k_svd_elbow}};
  return j.dump(2);
}

void write_order_report_file(const std::string& path, const OrderReport& report) {
  open_out(path) << order_report_to_json(report) << '\n';
}

std::string truth_to_json(const Dataset& dataset) {
  nlohmann::json spec{{"model",
                       dataset.spec.model == DataModel::kNestedBall ? "nested-ball"
                       : dataset.spec.model == DataModel::kArc      ? "arc"
                                                                    : "random"},
                      {"n", dataset.spec.n},
                      {"k0", dataset.spec.k0},
                      {"k1", dataset.spec.large_dim()},
                      {"k2", dataset.spec.small_dim()},
                      {"eps1", dataset.spec.eps1},
                      {"eps2", dataset.spec.eps2},
                      {"m1", dataset.spec.m1},
                      {"m2", dataset.spec.m2},
                      {"m3", dataset.spec.m3},
                      {"dims", dataset.spec.dims},
                      {"orthogonal_completion", dataset.spec.orthogonal_completion},
                      {"snr_db", std::isinf(dataset.spec.snr_db)
                                     ? nlohmann::json(nullptr)
                                     : nlohmann::json(dataset.spec.snr_db)},
                      {"seed", dataset.spec.seed}};
  nlohmann::json j{{"truth_k", dataset.truth_k},
                   {"truth_center", dataset.truth_center
                                        ? basis_to_json(*dataset.truth_center)
                                        : nlohmann::json(nullptr)},
                   {"spec", std::move(spec)}};
  return j.dump(2);
}

void write_truth_file(const std::string& path, const Dataset& dataset) {
  open_out(path) << truth_to_json(dataset) << '\n';
}

TruthInfo read_truth_file(const std::string& path) {
  const nlohmann::json j = parse_json_file(path);
  if (!j.contains("truth_k")) throw SchemaError(path + ": missing truth_k");
  TruthInfo info{j.at("truth_k").get<int>(), std::nullopt};
  if (j.contains("truth_center") && !j.at("truth_center").is_null()) {
    info.truth_center = basis_from_json(j.at("truth_center"));
  }
  return info;
}

DualWeights read_weights_json(const std::string& path) {
  const nlohmann::json j = parse_json_file(path);
  const nlohmann::json* arr = nullptr;
  if (j.is_array()) {
    arr = &j;
  } else if (j.is_object() && j.contains("lambda") && j.at("lambda").is_array()) {
    arr = &j.at("lambda");
  } else {
    throw SchemaError(path + ": expected a JSON array or an object with a lambda array");
  }
  Eigen::VectorXd v(arr->size());
  for (std::size_t i = 0; i < arr->size(); ++i) v(static_cast<Eigen::Index>(i)) = (*arr)[i].get<double>();
  return simplex_normalize(v);
}

}  // namespace gmeb
