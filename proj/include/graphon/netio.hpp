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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "graphon/graphon.hpp"
#include "graphon/spectral.hpp"

namespace graphon {

struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 1.0;
};

/// Network on nodes 0..n-1. Undirected datasets store each edge once; a
/// directed dataset stores entries (i, j) of the adjacency as given.
struct NetworkDataset {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::string name;
  std::string source;
  bool directed = false;
  bool self_loops = false;
  bool negative_weights = false;
  std::vector<std::string> warnings;

  Eigen::MatrixXd adjacency() const;
  /// Undirected, or directed with a symmetric adjacency.
  bool symmetric() const;
};

struct EdgeListOptions {
  bool directed = false;
};

/// Lines "i j [weight]"; '%' and '#' start comments. Indices are 0-based
/// when the smallest index is 0 and 1-based otherwise.
NetworkDataset parse_edge_list(std::string_view text, const EdgeListOptions& options = {});

/// MatrixMarket coordinate format (real, integer or pattern; symmetric or
/// general).
NetworkDataset parse_matrix_market(std::string_view text);

/// Chooses the parser from the MatrixMarket banner, otherwise edge list.
NetworkDataset load_network(const std::string& path, const EdgeListOptions& options = {});

enum class Normalization { kMaxAbs, kNone };

const char* normalization_name(Normalization n);
Normalization parse_normalization(std::string_view name);

/// Pixel-picture embedding of the adjacency in dataset node order. With
/// `symmetrize`, directed data is replaced by (A + Aᵀ)/2.
StepGraphon to_step_graphon(const NetworkDataset& ds, Normalization normalization = Normalization::kMaxAbs,
                            bool symmetrize = false);

/// Exchangeable random graph: latents u_1..u_n first, then one uniform per
/// pair i < j in row-major order; edge iff that uniform is < g(u_i, u_j).
NetworkDataset sample_graph(const Graphon& g, std::size_t n, std::uint64_t seed);

AdjacencySampler graphon_sampler(const Graphon& g);

/// Nodes reordered by descending weighted degree (ties by original index).
NetworkDataset relabel_by_degree(const NetworkDataset& ds);

struct SpectralReport {
  std::string name;
  std::size_t n = 0;
  std::vector<double> eigenvalues;  // adjacency eigenvalues, descending
  std::vector<double> histogram_edges;
  std::vector<std::size_t> histogram_counts;
  double trace = 0.0;         // Σ eigenvalues
  double diagonal_sum = 0.0;  // Σ a_ii
  double top_fraction = 0.1;
  std::size_t top_k = 0;
  std::vector<double> top_eigenvalues;  // ⌈fraction·N⌉ largest by |λ|
  double truncation_error = 0.0;        // ‖A − A_k‖₂ of the step graphon
  std::string normalization;
};

SpectralReport spectral_report(const NetworkDataset& ds, double top_fraction = 0.1, std::size_t bins = 50,
                               Normalization normalization = Normalization::kMaxAbs);

std::string to_json(const SpectralReport& r);

/// %.17g
std::string format_double(double x);
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);
/// Dense matrix, one row per line, no header.
std::string matrix_csv(const Eigen::MatrixXd& m);
/// Step graphons export their coefficients; other families their samples on
/// a resolution × resolution midpoint grid.
std::string kernel_csv(const Graphon& g, std::size_t resolution = 256);
std::string kernel_header_json(const Graphon& g, std::size_t resolution, const std::string& normalization);
/// 0-based "i j weight" lines.
std::string edge_list_text(const NetworkDataset& ds);

std::string read_file(const std::string& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace graphon
