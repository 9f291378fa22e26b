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

#include "graphon/netio.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "graphon/error.hpp"
#include "graphon/linalg.hpp"
#include "graphon/rng.hpp"

namespace graphon {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::size_t parse_index(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(ErrorCode::kParse, where(line) + "invalid node index '" + std::string(token) + "'");
  }
  return value;
}

double parse_weight(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    fail(ErrorCode::kParse, where(line) + "invalid weight '" + std::string(token) + "'");
  }
  return value;
}

// Iterates lines with 1-based numbers, handling \n and \r\n.
template <typename Body>
void for_each_line(std::string_view text, Body body) {
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    body(++number, line);
    pos = end + 1;
  }
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

struct RawEntry {
  std::size_t i;
  std::size_t j;
  double weight;
  std::size_t line;
};

// Builds the dataset from indices already shifted to 0-based. Repeated
// entries collapse when their weights agree.
NetworkDataset assemble(std::size_t n, const std::vector<RawEntry>& raw, bool directed, std::size_t base) {
  NetworkDataset ds;
  ds.n = n;
  ds.directed = directed;
  std::map<std::pair<std::size_t, std::size_t>, double> seen;
  for (const RawEntry& e : raw) {
    const auto key = directed ? std::make_pair(e.i, e.j) : std::make_pair(std::min(e.i, e.j), std::max(e.i, e.j));
    const auto [it, inserted] = seen.emplace(key, e.weight);
    if (!inserted) {
      if (it->second != e.weight) {
        fail(ErrorCode::kParse, where(e.line) + "conflicting weights for edge (" + std::to_string(e.i + base) + ", " +
                                    std::to_string(e.j + base) + ")");
      }
      continue;
    }
    ds.edges.push_back({e.i, e.j, e.weight});
    if (e.i == e.j) ds.self_loops = true;
    if (e.weight < 0.0) ds.negative_weights = true;
  }
  if (ds.self_loops) ds.warnings.emplace_back("dataset contains self-loops; the adjacency trace is not zero");
  if (ds.negative_weights) ds.warnings.emplace_back("dataset contains negative weights");
  return ds;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

Eigen::MatrixXd NetworkDataset::adjacency() const {
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (const Edge& e : edges) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    a(i, j) = e.weight;
    if (!directed) a(j, i) = e.weight;
  }
  return a;
}

bool NetworkDataset::symmetric() const { return !directed || linalg::is_symmetric(adjacency()); }

NetworkDataset parse_edge_list(std::string_view text, const EdgeListOptions& options) {
  std::vector<RawEntry> raw;
  for_each_line(text, [&](std::size_t number, std::string_view line) {
    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0][0] == '%' || tokens[0][0] == '#') return;
    if (tokens.size() < 2 || tokens.size() > 3) {
      fail(ErrorCode::kParse, where(number) + "expected 'i j [weight]', found " + std::to_string(tokens.size()) +
                                  " fields");
    }
    const double w = tokens.size() == 3 ? parse_weight(tokens[2], number) : 1.0;
    raw.push_back({parse_index(tokens[0], number), parse_index(tokens[1], number), w, number});
  });
  if (raw.empty()) fail(ErrorCode::kParse, "no edges found in edge list");

  std::size_t lo = raw.front().i;
  std::size_t hi = 0;
  for (const RawEntry& e : raw) {
    lo = std::min({lo, e.i, e.j});
    hi = std::max({hi, e.i, e.j});
  }
  const std::size_t base = lo == 0 ? 0 : 1;
  for (RawEntry& e : raw) {
    e.i -= base;
    e.j -= base;
  }
  return assemble(hi + 1 - base, raw, options.directed, base);
}

NetworkDataset parse_matrix_market(std::string_view text) {
  bool have_banner = false;
  bool have_size = false;
  bool pattern = false;
  bool symmetric = false;
  std::size_t rows = 0;
  std::size_t declared = 0;
  std::vector<RawEntry> raw;

  for_each_line(text, [&](std::size_t number, std::string_view line) {
    if (!have_banner) {
      const auto tokens = split_tokens(line);
      if (tokens.size() != 5 || lower(tokens[0]) != "%%matrixmarket") {
        fail(ErrorCode::kParse, where(number) + "missing '%%MatrixMarket' banner");
      }
      if (lower(tokens[1]) != "matrix") {
        fail(ErrorCode::kUnsupportedRepresentation, "unsupported MatrixMarket object '" + std::string(tokens[1]) + "'");
      }
      const std::string format = lower(tokens[2]);
      if (format != "coordinate") {
        fail(ErrorCode::kUnsupportedRepresentation,
             "unsupported MatrixMarket format '" + format + "'; only coordinate files are read");
      }
      const std::string field = lower(tokens[3]);
      if (field != "real" && field != "integer" && field != "pattern") {
        fail(ErrorCode::kUnsupportedRepresentation, "unsupported MatrixMarket field '" + field + "'");
      }
      const std::string symmetry = lower(tokens[4]);
      if (symmetry != "symmetric" && symmetry != "general") {
        fail(ErrorCode::kUnsupportedRepresentation, "unsupported MatrixMarket symmetry '" + symmetry + "'");
      }
      pattern = field == "pattern";
      symmetric = symmetry == "symmetric";
      have_banner = true;
      return;
    }
    if (is_blank(line) || line.front() == '%') return;
    const auto tokens = split_tokens(line);
    if (!have_size) {
      if (tokens.size() != 3) fail(ErrorCode::kParse, where(number) + "expected 'rows cols entries'");
      rows = parse_index(tokens[0], number);
      const std::size_t cols = parse_index(tokens[1], number);
      declared = parse_index(tokens[2], number);
      if (rows != cols) {
        fail(ErrorCode::kParse, where(number) + "adjacency must be square, got " + std::to_string(rows) + " x " +
                                    std::to_string(cols));
      }
      if (rows == 0) fail(ErrorCode::kParse, where(number) + "matrix has no rows");
      have_size = true;
      return;
    }
    const std::size_t expected = pattern ? 2 : 3;
    if (tokens.size() != expected) {
      fail(ErrorCode::kParse, where(number) + "expected " + std::to_string(expected) + " fields per entry");
    }
    const std::size_t i = parse_index(tokens[0], number);
    const std::size_t j = parse_index(tokens[1], number);
    if (i < 1 || j < 1 || i > rows || j > rows) {
      fail(ErrorCode::kParse, where(number) + "entry index outside 1.." + std::to_string(rows));
    }
    if (raw.size() == declared) {
      fail(ErrorCode::kParse, where(number) + "more entries than the " + std::to_string(declared) + " declared");
    }
    raw.push_back({i - 1, j - 1, pattern ? 1.0 : parse_weight(tokens[2], number), number});
  });
  if (!have_banner) fail(ErrorCode::kParse, "empty MatrixMarket input");
  if (!have_size) fail(ErrorCode::kParse, "MatrixMarket size line missing");
  if (raw.size() != declared) {
    fail(ErrorCode::kParse, "MatrixMarket header declares " + std::to_string(declared) + " entries, found " +
                                std::to_string(raw.size()));
  }
  return assemble(rows, raw, !symmetric, 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::kIo, "error reading '" + path + "'");
  return buf.str();
}

NetworkDataset load_network(const std::string& path, const EdgeListOptions& options) {
  const std::string text = read_file(path);
  const std::string_view head = std::string_view(text).substr(0, 14);
  NetworkDataset ds = lower(head) == "%%matrixmarket" ? parse_matrix_market(text) : parse_edge_list(text, options);
  ds.name = std::filesystem::path(path).stem().string();
  ds.source = path;
  return ds;
}

const char* normalization_name(Normalization n) { return n == Normalization::kMaxAbs ? "max-abs" : "none"; }

Normalization parse_normalization(std::string_view name) {
  if (name == "max-abs") return Normalization::kMaxAbs;
  if (name == "none") return Normalization::kNone;
  fail(ErrorCode::kInvalidArgument, "unknown normalization '" + std::string(name) + "' (max-abs | none)");
}

StepGraphon to_step_graphon(const NetworkDataset& ds, Normalization normalization, bool symmetrize) {
  require(ds.n >= 1, "dataset has no nodes");
  Eigen::MatrixXd a = ds.adjacency();
  if (!linalg::is_symmetric(a)) {
    require(symmetrize, "dataset '" + ds.name + "' is asymmetric; symmetrization was not requested");
    a = 0.5 * (a + a.transpose()).eval();
  }
  if (normalization == Normalization::kNone) return StepGraphon(std::move(a), Validation::kUnchecked);
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale > 0.0) a /= scale;
  return StepGraphon(std::move(a), Validation::kChecked);
}

NetworkDataset sample_graph(const Graphon& g, std::size_t n, std::uint64_t seed) {
  require(n >= 1, "sample size must be at least 1");
  if (const auto* step = std::get_if<StepGraphon>(&g)) {
    require(step->nonnegative_unit(), "step graphon values must lie in [0,1] to be edge probabilities");
  }
  Rng rng(seed);
  std::vector<double> latent(n);
  for (double& u : latent) u = rng.uniform();

  NetworkDataset ds;
  ds.n = n;
  ds.name = "sample-" + std::to_string(seed);
  ds.source = family_name(g);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = evaluate(g, latent[i], latent[j]);
      if (!(p >= 0.0 && p <= 1.0)) {
        fail(ErrorCode::kInvalidArgument, "kernel value " + format_double(p) + " is not a probability");
      }
      if (rng.uniform() < p) ds.edges.push_back({i, j, 1.0});
    }
  }
  return ds;
}

AdjacencySampler graphon_sampler(const Graphon& g) {
  return [g](std::size_t n, std::uint64_t seed) { return sample_graph(g, n, seed).adjacency(); };
}

NetworkDataset relabel_by_degree(const NetworkDataset& ds) {
  const Eigen::VectorXd degree = ds.adjacency().rowwise().sum();
  std::vector<std::size_t> order(ds.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return degree[static_cast<Eigen::Index>(a)] > degree[static_cast<Eigen::Index>(b)];
  });
  std::vector<std::size_t> label(ds.n);
  for (std::size_t k = 0; k < ds.n; ++k) label[order[k]] = k;
  NetworkDataset out = ds;
  for (Edge& e : out.edges) {
    e.i = label[e.i];
    e.j = label[e.j];
  }
  return out;
}

SpectralReport spectral_report(const NetworkDataset& ds, double top_fraction, std::size_t bins,
                               Normalization normalization) {
  require(top_fraction > 0.0 && top_fraction <= 1.0, "top fraction must lie in (0, 1]");
  require(bins >= 1, "histogram needs at least one bin");
  require(ds.symmetric(), "spectral report needs a symmetric dataset");
  const Eigen::MatrixXd a = ds.adjacency();
  const linalg::SymmetricEigen eig = linalg::ordered_eigen(a);

  SpectralReport r;
  r.name = ds.name;
  r.n = ds.n;
  r.normalization = normalization_name(normalization);
  r.eigenvalues.assign(eig.values.begin(), eig.values.end());
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), std::greater<>());
  r.trace = std::accumulate(r.eigenvalues.begin(), r.eigenvalues.end(), 0.0);
  r.diagonal_sum = a.trace();

  const double top = eig.values.cwiseAbs().maxCoeff();
  const double range = top > 0.0 ? top : 1.0;
  r.histogram_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) r.histogram_edges[b] = range * static_cast<double>(b) / static_cast<double>(bins);
  r.histogram_counts.assign(bins, 0);
  for (const double v : r.eigenvalues) {
    const auto b = static_cast<std::size_t>(std::floor(std::abs(v) / range * static_cast<double>(bins)));
    ++r.histogram_counts[std::min(b, bins - 1)];
  }

  r.top_fraction = top_fraction;
  r.top_k = std::min(ds.n, static_cast<std::size_t>(std::ceil(top_fraction * static_cast<double>(ds.n) - 1e-9)));
  r.top_k = std::max<std::size_t>(r.top_k, 1);
  r.top_eigenvalues.assign(eig.values.begin(), eig.values.begin() + static_cast<Eigen::Index>(r.top_k));

  const SpectralDecomposition d = decompose(to_step_graphon(ds, normalization));
  r.truncation_error = truncation_error(d, std::min(r.top_k, d.rank()));
  return r;
}

std::string to_json(const SpectralReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["n"] = r.n;
  j["eigenvalues"] = r.eigenvalues;
  j["histogram"] = {{"edges", r.histogram_edges}, {"counts", r.histogram_counts}};
  j["trace"] = r.trace;
  j["diagonal_sum"] = r.diagonal_sum;
  j["top_fraction"] = r.top_fraction;
  j["top_k"] = r.top_k;
  j["top_eigenvalues"] = r.top_eigenvalues;
  j["truncation_error"] = r.truncation_error;
  j["normalization"] = r.normalization;
  return j.dump(2) + "\n";
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out += ',';
    out += header[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    require(row.size() == header.size(), "CSV row width does not match the header");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string kernel_csv(const Graphon& g, std::size_t resolution) {
  if (const auto* step = std::get_if<StepGraphon>(&g)) return matrix_csv(step->coeffs());
  return matrix_csv(sample_on_grid(g, resolution).grid());
}

std::string kernel_header_json(const Graphon& g, std::size_t resolution, const std::string& normalization) {
  const auto* step = std::get_if<StepGraphon>(&g);
  nlohmann::ordered_json j;
  j["N"] = step ? step->size() : resolution;
  j["family"] = family_name(g);
  j["normalization"] = normalization;
  return j.dump(2) + "\n";
}

std::string edge_list_text(const NetworkDataset& ds) {
  std::string out = "% " + std::to_string(ds.n) + " nodes, " + std::to_string(ds.edges.size()) + " edges\n";
  for (const Edge& e : ds.edges) {
    out += std::to_string(e.i) + ' ' + std::to_string(e.j) + ' ' + format_double(e.weight) + '\n';
  }
  return out;
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) fail(ErrorCode::kIo, "error writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCode::kIo, "cannot move output into place at '" + path + "'");
  }
}

}  // namespace graphon
