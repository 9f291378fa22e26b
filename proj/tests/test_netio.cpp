// Copyright 2026 The graphonctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include <json.hpp>

#include "graphon/error.hpp"
#include "graphon/netio.hpp"
#include "graphon/rng.hpp"

using namespace graphon;

namespace {

std::string data(const std::string& name) { return std::string(GRAPHON_TEST_DATA) + "/" + name; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

double density(const NetworkDataset& ds) {
  const double pairs = 0.5 * double(ds.n) * double(ds.n - 1);
  return double(ds.edges.size()) / pairs;
}

}  // namespace

TEST_CASE("edge list: examples") {
  const NetworkDataset a = parse_edge_list("0 1\n1 0\n");
  CHECK(a.n == 2);
  CHECK(a.edges.size() == 1);
  CHECK(a.adjacency() == (Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished());

  const NetworkDataset b = parse_edge_list("1 2 0.5\n2 3 0.5\n");
  CHECK(b.n == 3);
  CHECK(b.adjacency()(0, 1) == 0.5);
  CHECK(b.adjacency()(2, 1) == 0.5);
  CHECK(b.adjacency()(0, 2) == 0.0);

  CHECK(code_of([] { (void)parse_edge_list(""); }) == ErrorCode::kParse);
  CHECK(code_of([] { (void)parse_edge_list("% only a comment\n"); }) == ErrorCode::kParse);
}

TEST_CASE("edge list: malformed lines name their line number") {
  try {
    (void)parse_edge_list("0 1\n# comment\n1 x\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(code_of([] { (void)parse_edge_list("0 1 2 3\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { (void)parse_edge_list("0 1 0.5\n1 0 0.7\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { (void)load_network(data("malformed.edges")); }) == ErrorCode::kParse);
  CHECK(code_of([] { (void)load_network(data("does-not-exist.edges")); }) == ErrorCode::kIo);
}

TEST_CASE("edge list: flags for negative weights, self-loops and direction") {
  const NetworkDataset neg = parse_edge_list("0 1 -0.5\n");
  CHECK(neg.negative_weights);
  CHECK(neg.adjacency()(0, 1) == -0.5);
  const NetworkDataset loops = load_network(data("selfloop.edges"));
  CHECK(loops.self_loops);
  CHECK(!loops.warnings.empty());
  CHECK(loops.adjacency()(0, 0) == 1.0);
  const SpectralReport r = spectral_report(loops);
  CHECK(r.diagonal_sum == 1.0);
  CHECK(std::abs(r.trace - 1.0) < 1e-10);

  const NetworkDataset d = parse_edge_list("0 1\n1 2\n", {.directed = true});
  CHECK(d.directed);
  CHECK(!d.symmetric());
  CHECK(d.adjacency()(1, 0) == 0.0);
}

TEST_CASE("matrix market: examples") {
  const NetworkDataset a = parse_matrix_market("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 1.0\n");
  CHECK(a.adjacency() == (Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished());

  const NetworkDataset p = load_network(data("pattern.mtx"));
  CHECK(p.n == 4);
  CHECK(p.adjacency().sum() == 8.0);
  CHECK(p.adjacency().maxCoeff() == 1.0);

  CHECK(code_of([] { (void)load_network(data("dense_array.mtx")); }) == ErrorCode::kUnsupportedRepresentation);
  CHECK(code_of([] { (void)parse_matrix_market("%%MatrixMarket matrix coordinate complex symmetric\n1 1 0\n"); }) ==
        ErrorCode::kUnsupportedRepresentation);
  CHECK(code_of([] { (void)parse_matrix_market("%%MatrixMarket vector coordinate real general\n1 1 0\n"); }) ==
        ErrorCode::kUnsupportedRepresentation);
  CHECK(code_of([] { (void)parse_matrix_market("%%MatrixMarket matrix coordinate real\n1 1 0\n"); }) ==
        ErrorCode::kParse);
  CHECK(code_of([] { (void)parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 3 0\n"); }) ==
        ErrorCode::kParse);
  CHECK(code_of([] { (void)parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 1\n"); }) ==
        ErrorCode::kParse);
  CHECK(code_of([] { (void)parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"); }) ==
        ErrorCode::kParse);

  const NetworkDataset s = load_network(data("small_sym.mtx"));
  CHECK(s.name == "small_sym");
  CHECK(s.adjacency()(0, 2) == 0.5);
  CHECK(s.adjacency()(2, 0) == 0.5);
  const NetworkDataset d = load_network(data("directed.mtx"));
  CHECK(d.directed);
}

TEST_CASE("to_step_graphon: examples and symmetrization") {
  const NetworkDataset c = load_network(data("cycle2.edges"));
  CHECK(to_step_graphon(c, Normalization::kNone).coeffs() == c.adjacency());
  const StepGraphon w = to_step_graphon(load_network(data("weighted.edges")), Normalization::kMaxAbs);
  CHECK(w.coeffs()(0, 1) == 1.0);
  CHECK(w.coeffs()(1, 2) == 0.5);

  const NetworkDataset d = load_network(data("directed.mtx"));
  CHECK(code_of([&] { (void)to_step_graphon(d); }) == ErrorCode::kInvalidArgument);
  const StepGraphon sym = to_step_graphon(d, Normalization::kNone, true);
  CHECK(sym.coeffs()(0, 1) == 0.5);
  CHECK(sym.coeffs()(1, 0) == 0.5);
  CHECK(parse_normalization("none") == Normalization::kNone);
  CHECK(std::string(normalization_name(Normalization::kMaxAbs)) == "max-abs");
  CHECK_THROWS_AS(parse_normalization("unit"), Error);
}

TEST_CASE("round trip: the step graphon reproduces the normalized adjacency") {
  for (const char* f : {"karate_style.edges", "ring4.edges", "small_sym.mtx", "weighted.edges"}) {
    const NetworkDataset ds = load_network(data(f));
    const Eigen::MatrixXd a = ds.adjacency();
    CHECK(to_step_graphon(ds, Normalization::kMaxAbs).coeffs() == a / a.cwiseAbs().maxCoeff());
    CHECK(to_step_graphon(ds, Normalization::kNone).coeffs() == a);
    // serialization round trip
    const NetworkDataset back = parse_edge_list(edge_list_text(ds));
    CHECK(back.adjacency() == a);
  }
}

TEST_CASE("sampling: trivial kernels and validation") {
  const NetworkDataset full = sample_graph(StepGraphon::constant(1, 1.0), 12, 7);
  CHECK(full.edges.size() == 66);
  CHECK(!full.self_loops);
  CHECK(sample_graph(StepGraphon::zero(1), 12, 7).edges.empty());
  CHECK(code_of([] { (void)sample_graph(StepGraphon::constant(1, -0.5), 5, 1); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { (void)sample_graph(SinusoidalGraphon(0.3, Eigen::VectorXd::Constant(1, 0.8)), 50, 1); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("sampling is deterministic per seed") {
  const StepGraphon g((Eigen::MatrixXd(2, 2) << 0.9, 0.1, 0.1, 0.6).finished());
  const std::string a = edge_list_text(sample_graph(g, 80, 42));
  const std::string b = edge_list_text(sample_graph(g, 80, 42));
  const std::string c = edge_list_text(sample_graph(g, 80, 43));
  CHECK(a == b);
  CHECK(a != c);
  CHECK(sample_graph(g, 80, 42).name == "sample-42");
}

TEST_CASE("rng: documented generator reproduces its reference stream") {
  // std::mt19937_64 with the default seed must output 9981545732273789042 on its 10000th call
  std::mt19937_64 ref;
  ref.discard(9999);
  CHECK(ref() == 9981545732273789042ull);
  Rng r(5489);
  std::mt19937_64 e(5489);
  for (int k = 0; k < 10; ++k) CHECK(r.next() == e());
  Rng u(1);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("sampled edge density converges to the kernel integral") {
  // equal block degrees, so the spread comes from the edge coins and shrinks like 1/n
  const StepGraphon g((Eigen::MatrixXd(2, 2) << 0.8, 0.2, 0.2, 0.8).finished());
  const double integral = g.coeffs().mean();
  std::vector<double> err50, err200;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    err50.push_back(std::abs(density(sample_graph(g, 50, seed)) - integral));
    err200.push_back(std::abs(density(sample_graph(g, 200, seed)) - integral));
  }
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  CHECK(median(err200) < median(err50));

  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) mean += density(sample_graph(StepGraphon::constant(1, 0.5), 100, seed));
  mean /= 20;
  CHECK(mean >= 0.45);
  CHECK(mean <= 0.55);
}

TEST_CASE("spectral report: examples and invariants") {
  const SpectralReport k2 = spectral_report(load_network(data("cycle2.edges")));
  REQUIRE(k2.eigenvalues.size() == 2);
  CHECK(k2.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(k2.eigenvalues[1] == doctest::Approx(-1.0));

  const NetworkDataset ks = load_network(data("karate_style.edges"));
  const SpectralReport r = spectral_report(ks);
  CHECK(r.n == 34);
  CHECK(std::abs(r.trace) <= 1e-8);
  CHECK(r.diagonal_sum == 0.0);
  CHECK(std::accumulate(r.histogram_counts.begin(), r.histogram_counts.end(), std::size_t{0}) == 34);
  CHECK(r.histogram_edges.size() == 51);
  CHECK(r.top_k == 4);
  double sum = 0.0;
  for (double v : r.eigenvalues) sum += v;
  CHECK(std::abs(r.trace - sum) < 1e-8);
  CHECK(std::is_sorted(r.eigenvalues.rbegin(), r.eigenvalues.rend()));
  // truncation error at top_k matches the graphon computation
  const SpectralDecomposition d = decompose(to_step_graphon(ks));
  CHECK(r.truncation_error == doctest::Approx(truncation_error(d, r.top_k)).epsilon(1e-12));
  CHECK(spectral_report(ks, 1.0).truncation_error < 1e-10);

  const nlohmann::json j = nlohmann::json::parse(to_json(r));
  for (const char* key : {"name", "n", "eigenvalues", "histogram", "trace", "top_k", "truncation_error"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["histogram"]["counts"].size() == 50);
}

TEST_CASE("G(100, 0.5) has a spike near 50 and a bulk near 0") {
  const SpectralReport r = spectral_report(sample_graph(StepGraphon::constant(1, 0.5), 100, 3));
  CHECK(std::abs(r.eigenvalues.front() - 50.0) <= 10.0);
  std::size_t bulk = 0;
  for (std::size_t k = 1; k < r.eigenvalues.size(); ++k) bulk += std::abs(r.eigenvalues[k]) <= 15.0;
  CHECK(bulk >= 95);
}

TEST_CASE("relabelling by degree keeps the spectrum") {
  const NetworkDataset ks = load_network(data("karate_style.edges"));
  const NetworkDataset re = relabel_by_degree(ks);
  const Eigen::VectorXd deg = re.adjacency().rowwise().sum();
  for (Eigen::Index i = 1; i < deg.size(); ++i) CHECK(deg[i - 1] >= deg[i]);
  const SpectralReport a = spectral_report(ks), b = spectral_report(re);
  for (std::size_t k = 0; k < a.eigenvalues.size(); ++k) CHECK(a.eigenvalues[k] == doctest::Approx(b.eigenvalues[k]));
}

TEST_CASE("serialization helpers") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(csv_table({"a", "b"}, {{1.0, 2.5}}) == "a,b\n1,2.5\n");
  CHECK(matrix_csv((Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished()) == "0,1\n1,0\n");
  const nlohmann::json h =
      nlohmann::json::parse(kernel_header_json(StepGraphon::constant(2, 0.5), 8, "max-abs"));
  CHECK(h["N"] == 2);
  CHECK(h["family"] == "step");
  CHECK(h["normalization"] == "max-abs");

  const std::string dir = (std::filesystem::temp_directory_path() / "graphon-netio-test").string();
  std::filesystem::create_directories(dir);
  write_file_atomic(dir + "/x.txt", "hello\n");
  CHECK(read_file(dir + "/x.txt") == "hello\n");
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);
  }
  CHECK(code_of([&] { write_file_atomic(dir + "/missing/dir/x.txt", "no"); }) == ErrorCode::kIo);
  std::filesystem::remove_all(dir);
}
