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

#include "graphonctl.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "graphon/epidemic.hpp"
#include "graphon/error.hpp"
#include "graphon/gramian.hpp"
#include "graphon/graphon.hpp"
#include "graphon/netio.hpp"
#include "graphon/parallel.hpp"
#include "graphon/spectral.hpp"

namespace g = graphon;

struct gcx_dataset {
  g::NetworkDataset ds;
};
struct gcx_graphon {
  g::Graphon g;
};
struct gcx_spectrum {
  g::SpectralDecomposition d;
};
struct gcx_system {
  g::GraphonSystem sys;
};
struct gcx_min_energy {
  double cost = 0.0;
  double realized = 0.0;
  double initial_norm = 0.0;
  double final_norm = 0.0;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> controls;
};
struct gcx_epidemic {
  g::EpidemicModel model;
};
struct gcx_riccati {
  g::RiccatiSolution sol;
};
struct gcx_run {
  g::EpidemicTrajectory traj;
};
struct gcx_projection {
  g::ProjectionReport report;
};

namespace {

thread_local std::string last_error;

gcx_status status_of(g::ErrorCode code) {
  switch (code) {
    case g::ErrorCode::kInvalidArgument: return GCX_INVALID_ARGUMENT;
    case g::ErrorCode::kIncompatibleDiscretization: return GCX_INCOMPATIBLE_DISCRETIZATION;
    case g::ErrorCode::kUnsupportedRepresentation: return GCX_UNSUPPORTED_REPRESENTATION;
    case g::ErrorCode::kParse: return GCX_PARSE_ERROR;
    case g::ErrorCode::kIo: return GCX_IO_ERROR;
    case g::ErrorCode::kNumeric: return GCX_NUMERIC_ERROR;
    case g::ErrorCode::kNotControllable: return GCX_NOT_CONTROLLABLE;
  }
  return GCX_INTERNAL_ERROR;
}

template <typename Body>
gcx_status guarded(Body body) {
  try {
    body();
    last_error.clear();
    return GCX_OK;
  } catch (const g::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GCX_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GCX_INTERNAL_ERROR;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) g::fail(g::ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void put_string(const std::string& s, char** out) {
  need(out, "output");
  *out = copy_string(s);
}

// Empty results may be written to a NULL buffer.
void copy_vector(const Eigen::VectorXd& v, double* out) {
  if (v.size() == 0) return;
  need(out, "output buffer");
  std::copy(v.data(), v.data() + v.size(), out);
}

void copy_values(const std::vector<double>& v, double* out) {
  if (v.empty()) return;
  need(out, "output buffer");
  std::copy(v.begin(), v.end(), out);
}

g::Normalization normalization_of(gcx_normalization n) {
  return n == GCX_NORMALIZE_NONE ? g::Normalization::kNone : g::Normalization::kMaxAbs;
}

g::OperatorFunction function_of(gcx_operator_function kind, int exponent) {
  return kind == GCX_EXPONENTIAL ? g::OperatorFunction::exponential() : g::OperatorFunction::power(exponent);
}

Eigen::MatrixXd square_from(const double* data, size_t n) {
  need(data, "matrix");
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = data[i * dim + j];
  }
  return m;
}

void check_index(size_t k, size_t count) {
  if (k >= count) g::fail(g::ErrorCode::kInvalidArgument, "time index out of range");
}

}  // namespace

extern "C" {

const char* gcx_version(void) { return "0.1.0"; }

const char* gcx_last_error(void) { return last_error.c_str(); }

void gcx_string_free(char* s) { std::free(s); }

void gcx_set_max_threads(size_t n) { g::set_max_threads(n); }

gcx_status gcx_read_file(const char* path, char** contents, size_t* length) {
  return guarded([&] {
    need(path, "path");
    const std::string text = g::read_file(path);
    put_string(text, contents);
    if (length) *length = text.size();
  });
}

gcx_status gcx_write_file_atomic(const char* path, const char* data, size_t length) {
  return guarded([&] {
    need(path, "path");
    if (length) need(data, "data");
    g::write_file_atomic(path, std::string_view(data ? data : "", length));
  });
}

gcx_status gcx_format_csv(const char* const* header, size_t cols, const double* data, size_t rows, char** out) {
  return guarded([&] {
    need(header, "header");
    if (rows) need(data, "data");
    std::vector<std::string> names(header, header + cols);
    std::vector<std::vector<double>> table(rows);
    for (size_t r = 0; r < rows; ++r) table[r].assign(data + r * cols, data + (r + 1) * cols);
    put_string(g::csv_table(names, table), out);
  });
}

gcx_status gcx_dataset_load(const char* path, int directed, gcx_dataset** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output");
    *out = new gcx_dataset{g::load_network(path, {directed != 0})};
  });
}

gcx_status gcx_dataset_parse_edge_list(const char* text, size_t length, int directed, gcx_dataset** out) {
  return guarded([&] {
    if (length) need(text, "text");
    need(out, "output");
    *out = new gcx_dataset{g::parse_edge_list(std::string_view(text ? text : "", length), {directed != 0})};
  });
}

gcx_status gcx_dataset_parse_matrix_market(const char* text, size_t length, gcx_dataset** out) {
  return guarded([&] {
    if (length) need(text, "text");
    need(out, "output");
    *out = new gcx_dataset{g::parse_matrix_market(std::string_view(text ? text : "", length))};
  });
}

gcx_status gcx_dataset_sample(const gcx_graphon* gr, size_t n, uint64_t seed, gcx_dataset** out) {
  return guarded([&] {
    need(gr, "graphon");
    need(out, "output");
    *out = new gcx_dataset{g::sample_graph(gr->g, n, seed)};
  });
}

gcx_status gcx_dataset_relabel_by_degree(const gcx_dataset* ds, gcx_dataset** out) {
  return guarded([&] {
    need(ds, "dataset");
    need(out, "output");
    *out = new gcx_dataset{g::relabel_by_degree(ds->ds)};
  });
}

void gcx_dataset_free(gcx_dataset* ds) { delete ds; }

size_t gcx_dataset_nodes(const gcx_dataset* ds) { return ds ? ds->ds.n : 0; }

size_t gcx_dataset_edge_count(const gcx_dataset* ds) { return ds ? ds->ds.edges.size() : 0; }

int gcx_dataset_is_symmetric(const gcx_dataset* ds) { return ds && ds->ds.symmetric() ? 1 : 0; }

size_t gcx_dataset_warning_count(const gcx_dataset* ds) { return ds ? ds->ds.warnings.size() : 0; }

const char* gcx_dataset_warning(const gcx_dataset* ds, size_t index) {
  if (!ds || index >= ds->ds.warnings.size()) return nullptr;
  return ds->ds.warnings[index].c_str();
}

gcx_status gcx_dataset_adjacency(const gcx_dataset* ds, double* out) {
  return guarded([&] {
    need(ds, "dataset");
    need(out, "output buffer");
    const Eigen::MatrixXd a = ds->ds.adjacency();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) out[i * a.cols() + j] = a(i, j);
    }
  });
}

gcx_status gcx_dataset_edge_list(const gcx_dataset* ds, char** out) {
  return guarded([&] {
    need(ds, "dataset");
    put_string(g::edge_list_text(ds->ds), out);
  });
}

gcx_status gcx_dataset_density(const gcx_dataset* ds, double* out) {
  return guarded([&] {
    need(ds, "dataset");
    need(out, "output");
    const double n = static_cast<double>(ds->ds.n);
    *out = ds->ds.n < 2 ? 0.0 : static_cast<double>(ds->ds.edges.size()) / (0.5 * n * (n - 1.0));
  });
}

gcx_status gcx_spectral_report_json(const gcx_dataset* ds, double top_fraction, size_t bins,
                                    gcx_normalization normalization, char** json) {
  return guarded([&] {
    need(ds, "dataset");
    put_string(g::to_json(g::spectral_report(ds->ds, top_fraction, bins, normalization_of(normalization))), json);
  });
}

gcx_status gcx_graphon_step(const double* coeffs, size_t n, int checked, gcx_graphon** out) {
  return guarded([&] {
    need(out, "output");
    g::require(n >= 1, "step graphon needs at least one block");
    *out = new gcx_graphon{g::StepGraphon(square_from(coeffs, n),
                                          checked ? g::Validation::kChecked : g::Validation::kUnchecked)};
  });
}

gcx_status gcx_graphon_sinusoidal(double a0, const double* b, size_t harmonics, gcx_graphon** out) {
  return guarded([&] {
    need(out, "output");
    if (harmonics) need(b, "harmonic coefficients");
    Eigen::VectorXd bv(static_cast<Eigen::Index>(harmonics));
    for (size_t k = 0; k < harmonics; ++k) bv[static_cast<Eigen::Index>(k)] = b[k];
    *out = new gcx_graphon{g::SinusoidalGraphon(a0, bv)};
  });
}

gcx_status gcx_graphon_from_dataset(const gcx_dataset* ds, gcx_normalization normalization, int symmetrize,
                                    gcx_graphon** out) {
  return guarded([&] {
    need(ds, "dataset");
    need(out, "output");
    *out = new gcx_graphon{g::to_step_graphon(ds->ds, normalization_of(normalization), symmetrize != 0)};
  });
}

void gcx_graphon_free(gcx_graphon* gr) { delete gr; }

const char* gcx_graphon_family(const gcx_graphon* gr) {
  if (!gr) return "";
  switch (gr->g.index()) {
    case 0: return "step";
    case 1: return "sinusoidal";
    case 2: return "fourier";
    default: return "sampled";
  }
}

size_t gcx_graphon_blocks(const gcx_graphon* gr) {
  if (!gr) return 0;
  const auto* step = std::get_if<g::StepGraphon>(&gr->g);
  return step ? step->size() : 0;
}

gcx_status gcx_graphon_evaluate(const gcx_graphon* gr, double x, double y, double* out) {
  return guarded([&] {
    need(gr, "graphon");
    need(out, "output");
    *out = g::evaluate(gr->g, x, y);
  });
}

gcx_status gcx_graphon_l2_norm(const gcx_graphon* gr, double* out) {
  return guarded([&] {
    need(gr, "graphon");
    need(out, "output");
    *out = g::l2_norm(gr->g);
  });
}

gcx_status gcx_graphon_operator_norm(const gcx_graphon* gr, double* out) {
  return guarded([&] {
    need(gr, "graphon");
    need(out, "output");
    *out = g::operator_norm(gr->g);
  });
}

gcx_status gcx_graphon_l2_distance(const gcx_graphon* a, const gcx_graphon* b, double* out) {
  return guarded([&] {
    need(a, "graphon");
    need(b, "graphon");
    need(out, "output");
    *out = g::l2_distance(a->g, b->g);
  });
}

gcx_status gcx_graphon_cut_norm(const gcx_graphon* gr, size_t exact_limit, double* lower, double* upper, int* exact) {
  return guarded([&] {
    need(gr, "graphon");
    const g::CutNorm c = g::cut_norm(gr->g, exact_limit);
    if (lower) *lower = c.lower;
    if (upper) *upper = c.upper;
    if (exact) *exact = c.exact ? 1 : 0;
  });
}

gcx_status gcx_graphon_kernel_csv(const gcx_graphon* gr, size_t resolution, char** out) {
  return guarded([&] {
    need(gr, "graphon");
    put_string(g::kernel_csv(gr->g, resolution), out);
  });
}

gcx_status gcx_graphon_kernel_header(const gcx_graphon* gr, size_t resolution, const char* normalization,
                                     char** out) {
  return guarded([&] {
    need(gr, "graphon");
    put_string(g::kernel_header_json(gr->g, resolution, normalization ? normalization : "none"), out);
  });
}

gcx_status gcx_decompose(const gcx_graphon* gr, gcx_spectrum** out) {
  return guarded([&] {
    need(gr, "graphon");
    need(out, "output");
    *out = new gcx_spectrum{g::decompose(gr->g)};
  });
}

void gcx_spectrum_free(gcx_spectrum* s) { delete s; }

size_t gcx_spectrum_rank(const gcx_spectrum* s) { return s ? s->d.rank() : 0; }

gcx_status gcx_spectrum_eigenvalues(const gcx_spectrum* s, double* out) {
  return guarded([&] {
    need(s, "spectrum");
    copy_values(s->d.eigenvalues(), out);
  });
}

gcx_status gcx_spectrum_truncation_error(const gcx_spectrum* s, size_t m, double* out) {
  return guarded([&] {
    need(s, "spectrum");
    need(out, "output");
    *out = g::truncation_error(s->d, m);
  });
}

gcx_status gcx_spectrum_truncate(const gcx_spectrum* s, size_t m, gcx_graphon** out) {
  return guarded([&] {
    need(s, "spectrum");
    need(out, "output");
    *out = new gcx_graphon{g::truncate(s->d, m)};
  });
}

gcx_status gcx_fourier_truncate(const gcx_spectrum* s, size_t m, size_t order, double* truncation_term,
                                double* fourier_term, double* bound, gcx_graphon** kernel) {
  return guarded([&] {
    need(s, "spectrum");
    g::FourierApproximation fa = g::fourier_truncate(s->d, m, order);
    if (truncation_term) *truncation_term = fa.truncation_term;
    if (fourier_term) *fourier_term = fa.fourier_term;
    if (bound) *bound = fa.bound;
    if (kernel) *kernel = new gcx_graphon{std::move(fa.kernel)};
  });
}

gcx_status gcx_operator_function_bound(const gcx_graphon* a, const gcx_graphon* a_pm, gcx_operator_function kind,
                                       int exponent, double* c, double* delta, double* bound) {
  return guarded([&] {
    need(a, "graphon");
    need(a_pm, "approximation");
    const g::OperatorFunctionBound b = g::operator_function_error(a->g, a_pm->g, function_of(kind, exponent));
    if (c) *c = b.c;
    if (delta) *delta = b.delta;
    if (bound) *bound = b.bound;
  });
}

gcx_status gcx_operator_function_measured(const gcx_graphon* a, const gcx_graphon* a_pm, gcx_operator_function kind,
                                          int exponent, size_t resolution, double* out) {
  return guarded([&] {
    need(a, "graphon");
    need(a_pm, "approximation");
    need(out, "output");
    *out = g::measured_operator_function_discrepancy(a->g, a_pm->g, function_of(kind, exponent), resolution);
  });
}

gcx_status gcx_convergence_experiment(const gcx_graphon* gr, const size_t* sizes, size_t size_count,
                                      const uint64_t* seeds, size_t seed_count, size_t k, char** csv) {
  return guarded([&] {
    need(gr, "graphon");
    need(sizes, "sizes");
    need(seeds, "seeds");
    const g::SpectralDecomposition limit = g::decompose(gr->g);
    const std::vector<std::size_t> sz(sizes, sizes + size_count);
    const std::vector<std::uint64_t> sd(seeds, seeds + seed_count);
    const auto rows = g::eigenvalue_convergence_experiment(g::graphon_sampler(gr->g), limit, sz, sd, k);
    std::vector<std::string> header{"n", "seed", "error"};
    const size_t width = rows.empty() ? 0 : rows.front().sampled.size();
    for (size_t i = 0; i < width; ++i) header.push_back("sampled_" + std::to_string(i + 1));
    for (size_t i = 0; i < width; ++i) header.push_back("limit_" + std::to_string(i + 1));
    std::vector<std::vector<double>> table;
    for (const auto& r : rows) {
      std::vector<double> row{static_cast<double>(r.n), static_cast<double>(r.seed), r.error};
      row.insert(row.end(), r.sampled.begin(), r.sampled.end());
      row.insert(row.end(), r.limit.begin(), r.limit.end());
      table.push_back(std::move(row));
    }
    put_string(g::csv_table(header, table), csv);
  });
}

gcx_status gcx_system_create(double alpha0, double beta0, const gcx_graphon* a, const double* input_poly,
                             size_t degree, double horizon, gcx_system** out) {
  return guarded([&] {
    need(a, "graphon");
    need(out, "output");
    if (degree) need(input_poly, "input polynomial");
    std::vector<double> poly(input_poly, input_poly + degree);
    *out = new gcx_system{g::GraphonSystem(alpha0, beta0, a->g, std::move(poly), horizon)};
  });
}

void gcx_system_free(gcx_system* sys) { delete sys; }

size_t gcx_system_rank(const gcx_system* sys) { return sys ? sys->sys.spectrum().rank() : 0; }

gcx_status gcx_system_eigenvalues(const gcx_system* sys, double* out) {
  return guarded([&] {
    need(sys, "system");
    copy_values(sys->sys.spectrum().eigenvalues(), out);
  });
}

gcx_status gcx_system_eta(const gcx_system* sys, double* out) {
  return guarded([&] {
    need(sys, "system");
    copy_values(sys->sys.eta(), out);
  });
}

gcx_status gcx_gramian(const gcx_system* sys, double* scalar, double* coefficients) {
  return guarded([&] {
    need(sys, "system");
    const g::GramianOperator w = g::gramian(sys->sys);
    if (scalar) *scalar = w.scalar;
    if (coefficients) copy_values(w.coeffs, coefficients);
  });
}

gcx_status gcx_gramian_inverse(const gcx_system* sys, double* scalar, double* coefficients) {
  return guarded([&] {
    need(sys, "system");
    const g::GramianOperator w = g::gramian_inverse(sys->sys);
    if (scalar) *scalar = w.scalar;
    if (coefficients) copy_values(w.coeffs, coefficients);
  });
}

gcx_status gcx_controllability(const gcx_system* sys, double tolerance, double* spectral_lower_bound,
                               int* beta0_nonzero, int* controllable) {
  return guarded([&] {
    need(sys, "system");
    const g::ControllabilityVerdict v = g::exact_controllability_check(sys->sys, tolerance);
    if (spectral_lower_bound) *spectral_lower_bound = v.spectral_lower_bound;
    if (beta0_nonzero) *beta0_nonzero = v.beta0_nonzero ? 1 : 0;
    if (controllable) *controllable = v.exactly_controllable ? 1 : 0;
  });
}

gcx_status gcx_gramian_oracle_error(const gcx_system* sys, size_t intervals, double* relative_error) {
  return guarded([&] {
    need(sys, "system");
    need(relative_error, "output");
    const auto* step = std::get_if<g::StepGraphon>(&sys->sys.graphon());
    if (!step) g::fail(g::ErrorCode::kUnsupportedRepresentation, "quadrature oracle needs a step-graphon system");
    const Eigen::MatrixXd closed = g::gramian(sys->sys).matrix(step->size());
    const Eigen::MatrixXd quad = g::gramian_quadrature_matrix(sys->sys, intervals);
    *relative_error = (closed - quad).cwiseAbs().maxCoeff() / closed.cwiseAbs().maxCoeff();
  });
}

gcx_status gcx_min_energy_run(const gcx_system* sys, const double* x0, size_t blocks, double step,
                              gcx_min_energy** out) {
  return guarded([&] {
    need(sys, "system");
    need(x0, "initial state");
    need(out, "output");
    const auto* sg = std::get_if<g::StepGraphon>(&sys->sys.graphon());
    if (!sg) g::fail(g::ErrorCode::kUnsupportedRepresentation, "minimum-energy runs need a step-graphon system");
    g::require(blocks == sg->size(), "initial state must have one value per block");
    Eigen::VectorXd v(static_cast<Eigen::Index>(blocks));
    std::copy(x0, x0 + blocks, v.data());
    const g::Function start = g::PiecewiseConstantFunction(v);

    const g::MinEnergyControl mec = g::min_energy_control(sys->sys, start);
    const g::Trajectory traj = g::simulate(sys->sys, start, mec.signal, step);
    auto run = std::make_unique<gcx_min_energy>();
    run->cost = mec.energy;
    run->realized = g::control_energy(mec.signal, sys->sys.horizon(), 2 * (traj.times.size() - 1));
    run->initial_norm = g::l2_norm(start);
    run->final_norm = g::l2_norm(traj.states.back());
    run->times = traj.times;
    for (size_t k = 0; k < traj.times.size(); ++k) {
      run->states.push_back(std::get<g::PiecewiseConstantFunction>(traj.states[k]).values());
      run->controls.push_back(std::get<g::PiecewiseConstantFunction>(mec.signal(traj.times[k])).values());
    }
    *out = run.release();
  });
}

void gcx_min_energy_free(gcx_min_energy* run) { delete run; }
double gcx_min_energy_cost(const gcx_min_energy* run) { return run ? run->cost : NAN; }
double gcx_min_energy_realized(const gcx_min_energy* run) { return run ? run->realized : NAN; }
double gcx_min_energy_initial_norm(const gcx_min_energy* run) { return run ? run->initial_norm : NAN; }
double gcx_min_energy_final_norm(const gcx_min_energy* run) { return run ? run->final_norm : NAN; }
size_t gcx_min_energy_steps(const gcx_min_energy* run) { return run ? run->times.size() : 0; }

size_t gcx_min_energy_blocks(const gcx_min_energy* run) {
  return run && !run->states.empty() ? static_cast<size_t>(run->states.front().size()) : 0;
}

double gcx_min_energy_time(const gcx_min_energy* run, size_t k) {
  return run && k < run->times.size() ? run->times[k] : NAN;
}

gcx_status gcx_min_energy_state(const gcx_min_energy* run, size_t k, double* out) {
  return guarded([&] {
    need(run, "run");
    check_index(k, run->states.size());
    copy_vector(run->states[k], out);
  });
}

gcx_status gcx_min_energy_control(const gcx_min_energy* run, size_t k, double* out) {
  return guarded([&] {
    need(run, "run");
    check_index(k, run->controls.size());
    copy_vector(run->controls[k], out);
  });
}

gcx_status gcx_epidemic_create(const double* contact, size_t n, double alpha, double eta, double beta0, double q_t,
                               double q_T, double horizon, gcx_epidemic** out) {
  return guarded([&] {
    need(out, "output");
    g::require(n >= 1, "contact network needs at least one node");
    *out = new gcx_epidemic{g::EpidemicModel(square_from(contact, n), alpha, eta, beta0, q_t, q_T, horizon)};
  });
}

void gcx_epidemic_free(gcx_epidemic* m) { delete m; }

size_t gcx_epidemic_nodes(const gcx_epidemic* m) { return m ? m->model.size() : 0; }

size_t gcx_epidemic_rank(const gcx_epidemic* m) {
  return m ? static_cast<size_t>(m->model.spectrum().values.size()) : 0;
}

gcx_status gcx_epidemic_stability(const gcx_epidemic* m, double* lambda_max, int* stable) {
  return guarded([&] {
    need(m, "model");
    const g::StabilityVerdict v = g::stability_threshold(m->model);
    if (lambda_max) *lambda_max = v.lambda_max;
    if (stable) *stable = v.stable ? 1 : 0;
  });
}

gcx_status gcx_riccati_solve(const gcx_epidemic* m, size_t steps, int graphon_path, gcx_riccati** out) {
  return guarded([&] {
    need(m, "model");
    need(out, "output");
    g::RiccatiParams params = g::riccati_params(m->model);
    if (steps) params.steps = steps;
    if (graphon_path) {
      const g::SpectralDecomposition d = g::decompose(m->model.contact_graphon());
      *out = new gcx_riccati{g::solve_riccati_graphon(d, params)};
    } else {
      *out = new gcx_riccati{g::solve_riccati_finite(m->model, params)};
    }
  });
}

void gcx_riccati_free(gcx_riccati* sol) { delete sol; }
size_t gcx_riccati_times(const gcx_riccati* sol) { return sol ? sol->sol.times.size() : 0; }
size_t gcx_riccati_directions(const gcx_riccati* sol) { return sol ? sol->sol.directions() : 0; }
double gcx_riccati_error_estimate(const gcx_riccati* sol) { return sol ? sol->sol.error_estimate : NAN; }

gcx_status gcx_riccati_time_grid(const gcx_riccati* sol, double* out) {
  return guarded([&] {
    need(sol, "solution");
    copy_values(sol->sol.times, out);
  });
}

gcx_status gcx_riccati_breve(const gcx_riccati* sol, double* out) {
  return guarded([&] {
    need(sol, "solution");
    copy_values(sol->sol.breve, out);
  });
}

gcx_status gcx_riccati_pi(const gcx_riccati* sol, size_t direction, double* out) {
  return guarded([&] {
    need(sol, "solution");
    g::require(direction < sol->sol.directions(), "eigendirection index out of range");
    copy_values(sol->sol.pi[direction], out);
  });
}

gcx_status gcx_riccati_eigenvalues(const gcx_riccati* sol, double* out) {
  return guarded([&] {
    need(sol, "solution");
    copy_values(sol->sol.eigenvalues, out);
  });
}

gcx_status gcx_epidemic_run(const gcx_epidemic* m, const gcx_riccati* sol, const double* p0, double step,
                            int nonlinear, gcx_run** out) {
  return guarded([&] {
    need(m, "model");
    need(p0, "initial state");
    need(out, "output");
    Eigen::VectorXd p(static_cast<Eigen::Index>(m->model.size()));
    std::copy(p0, p0 + m->model.size(), p.data());
    const g::FeedbackLaw law = sol ? g::spectral_feedback(m->model, sol->sol) : g::FeedbackLaw();
    *out = new gcx_run{nonlinear ? g::simulate_nonlinear(m->model, p, law, step)
                                 : g::simulate_linearized(m->model, p, law, step)};
  });
}

void gcx_run_free(gcx_run* run) { delete run; }
size_t gcx_run_steps(const gcx_run* run) { return run ? run->traj.times.size() : 0; }
double gcx_run_time(const gcx_run* run, size_t k) {
  return run && k < run->traj.times.size() ? run->traj.times[k] : NAN;
}

gcx_status gcx_run_state(const gcx_run* run, size_t k, double* out) {
  return guarded([&] {
    need(run, "run");
    check_index(k, run->traj.states.size());
    copy_vector(run->traj.states[k], out);
  });
}

gcx_status gcx_run_control(const gcx_run* run, size_t k, double* out) {
  return guarded([&] {
    need(run, "run");
    check_index(k, run->traj.controls.size());
    copy_vector(run->traj.controls[k], out);
  });
}

int gcx_run_left_validity_range(const gcx_run* run) { return run && run->traj.left_validity_range ? 1 : 0; }

gcx_status gcx_run_cost(const gcx_epidemic* m, const gcx_run* run, double* out) {
  return guarded([&] {
    need(m, "model");
    need(run, "run");
    need(out, "output");
    *out = g::closed_loop_cost(m->model, run->traj);
  });
}

gcx_status gcx_projection_create(const gcx_epidemic* m, const gcx_run* run, gcx_projection** out) {
  return guarded([&] {
    need(m, "model");
    need(run, "run");
    need(out, "output");
    *out = new gcx_projection{g::project_trajectories(run->traj, m->model.spectrum())};
  });
}

void gcx_projection_free(gcx_projection* p) { delete p; }

size_t gcx_projection_rank(const gcx_projection* p) {
  return p ? static_cast<size_t>(p->report.directions.cols()) : 0;
}

gcx_status gcx_projection_state_coefficients(const gcx_projection* p, size_t k, double* out) {
  return guarded([&] {
    need(p, "projection");
    check_index(k, p->report.state_coefficients.size());
    copy_vector(p->report.state_coefficients[k], out);
  });
}

gcx_status gcx_projection_control_coefficients(const gcx_projection* p, size_t k, double* out) {
  return guarded([&] {
    need(p, "projection");
    check_index(k, p->report.control_coefficients.size());
    copy_vector(p->report.control_coefficients[k], out);
  });
}

gcx_status gcx_projection_auxiliary_state(const gcx_projection* p, size_t k, double* out) {
  return guarded([&] {
    need(p, "projection");
    check_index(k, p->report.auxiliary_states.size());
    copy_vector(p->report.auxiliary_states[k], out);
  });
}

gcx_status gcx_projection_auxiliary_control(const gcx_projection* p, size_t k, double* out) {
  return guarded([&] {
    need(p, "projection");
    check_index(k, p->report.auxiliary_controls.size());
    copy_vector(p->report.auxiliary_controls[k], out);
  });
}

gcx_status gcx_projection_reconstruction_error(const gcx_projection* p, const gcx_run* run, double* out) {
  return guarded([&] {
    need(p, "projection");
    need(run, "run");
    need(out, "output");
    g::require(run->traj.states.size() == p->report.times.size(), "projection and run have different grids");
    double err = 0.0;
    for (size_t k = 0; k < run->traj.states.size(); ++k) {
      err = std::max(err, (p->report.reconstruct_state(k) - run->traj.states[k]).cwiseAbs().maxCoeff());
    }
    *out = err;
  });
}

}  // extern "C"
