#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "gmeb/io.hpp"
#include "support/fixtures.hpp"

using namespace gmeb;
using gmeb::tests::random_basis_of;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("gmeb_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

SubspaceCollection mixed_collection() {
  RngStream rng(211);
  std::vector<Basis> items;
  items.push_back(random_basis_of(6, 2, rng));
  items.push_back(random_basis_of(6, 4, rng));
  items.push_back(random_basis_of(6, 1, rng));
  return SubspaceCollection(std::move(items));
}

}  // namespace

TEST_CASE("collection round trip is bit exact") {
  const SubspaceCollection c = mixed_collection();
  std::stringstream buffer;
  write_collection(buffer, c);
  const SubspaceCollection back = read_collection(buffer);
  REQUIRE(back.size() == c.size());
  CHECK(back.n() == c.n());
  for (int i = 0; i < c.size(); ++i) {
    CHECK((back[i].matrix() - c[i].matrix()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("parse errors carry line numbers") {
  {
    std::stringstream bad("not a header\n");
    try {
      read_collection(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  {
    std::stringstream bad("5 1\nx\n");
    try {
      read_collection(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  {
    // Third row of the basis has a trailing token.
    std::stringstream bad("3 1\n1\n1\n0 7\n0\n");
    try {
      read_collection(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
    }
  }
  {
    std::stringstream truncated("3 2\n1\n1\n0\n0\n");
    CHECK_THROWS_AS(read_collection(truncated), ParseError);
  }
}

TEST_CASE("a non-orthonormal item is a parse error, not a crash") {
  std::stringstream bad("2 1\n1\n1\n1\n");
  CHECK_THROWS_AS(read_collection(bad), ParseError);
}

TEST_CASE("result JSON carries the full contract") {
  const SubspaceCollection c = tests::worked_example();
  const SolverResult r = solve(c, 2);
  const nlohmann::json j = nlohmann::json::parse(result_to_json(r));

  CHECK(j.at("k").get<int>() == 2);
  CHECK(j.at("lambda").size() == 3);
  CHECK(j.at("center").at("n").get<int>() == 5);
  CHECK(j.at("center").at("k").get<int>() == 2);
  CHECK(j.at("center").at("rows").size() == 5);
  CHECK(j.at("primal_cost").get<double>() == r.primal_cost);
  CHECK(j.at("dual_cost").get<double>() == r.dual_cost);
  CHECK(j.at("duality_gap").get<double>() == r.duality_gap);
  CHECK(j.at("iterations").get<int>() == r.iterations);
  CHECK(j.at("converged_reason").get<std::string>() == to_string(r.converged_reason));
  REQUIRE(j.at("trace").size() == r.trace.size());
  CHECK(j.at("trace")[0].at("t").get<int>() == 0);
}

TEST_CASE("truth sidecar round trip") {
  TempDir tmp;
  DatasetSpec spec;
  spec.model = DataModel::kNestedBall;
  spec.n = 8;
  spec.k0 = 2;
  spec.eps1 = 0.8;
  spec.eps2 = 0.1;
  spec.m1 = 5;
  spec.m2 = 2;
  spec.seed = 23;
  const Dataset data = nested_ball_dataset(spec);

  const std::string path = tmp.file("truth.json");
  write_truth_file(path, data);
  const TruthInfo info = read_truth_file(path);
  CHECK(info.truth_k == 2);
  REQUIRE(info.truth_center.has_value());
  CHECK((info.truth_center->matrix() - data.truth_center->matrix()).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("weights JSON accepts arrays and result objects") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("w.json"));
    out << "[0.25, 0.25, 0.5]";
  }
  const DualWeights w = read_weights_json(tmp.file("w.json"));
  CHECK(w[2] == doctest::Approx(0.5));

  const SubspaceCollection c = tests::worked_example();
  write_result_file(tmp.file("r.json"), solve(c, 1));
  const DualWeights from_result = read_weights_json(tmp.file("r.json"));
  CHECK(from_result.size() == 3);

  {
    std::ofstream out(tmp.file("bad.json"));
    out << "{\"nope\": 1}";
  }
  CHECK_THROWS_AS(read_weights_json(tmp.file("bad.json")), SchemaError);
  {
    std::ofstream out(tmp.file("broken.json"));
    out << "{";
  }
  CHECK_THROWS_AS(read_weights_json(tmp.file("broken.json")), SchemaError);
}

TEST_CASE("order report JSON lists rows and selections") {
  const SubspaceCollection c = tests::worked_example();
  const OrderReport report = select_order(c);
  const nlohmann::json j = nlohmann::json::parse(order_report_to_json(report));
  CHECK(j.at("rows").size() == 3);
  CHECK(j.at("k_proposed").get<int>() == 1);
  CHECK(j.at("rows")[0].at("c_pen").get<double>() == 1.0);
  CHECK(j.at("rows")[1].contains("e_hybrid"));
}
