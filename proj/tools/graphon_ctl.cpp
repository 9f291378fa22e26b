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

// graphon-ctl: batch front end over the graphonctl C interface.

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "graphonctl.h"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void input_error(const std::string& message) { throw CliFailure{kExitInput, message}; }

int exit_code_for(gcx_status s) {
  return s == GCX_NUMERIC_ERROR || s == GCX_INTERNAL_ERROR ? kExitNumeric : kExitInput;
}

void check(gcx_status s) {
  if (s != GCX_OK) throw CliFailure{exit_code_for(s), gcx_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Dataset = Handle<gcx_dataset, gcx_dataset_free>;
using Graphon = Handle<gcx_graphon, gcx_graphon_free>;
using Spectrum = Handle<gcx_spectrum, gcx_spectrum_free>;
using System = Handle<gcx_system, gcx_system_free>;
using MinEnergy = Handle<gcx_min_energy, gcx_min_energy_free>;
using Epidemic = Handle<gcx_epidemic, gcx_epidemic_free>;
using Riccati = Handle<gcx_riccati, gcx_riccati_free>;
using Run = Handle<gcx_run, gcx_run_free>;
using Projection = Handle<gcx_projection, gcx_projection_free>;

std::string take_string(char* s) {
  std::string out(s ? s : "");
  gcx_string_free(s);
  return out;
}

// Options shared by the subcommands; each subcommand registers the subset it
// uses.
struct Config {
  std::string input;
  std::string graphon;
  std::string out = "graphon-ctl-out";
  std::string normalization = "max-abs";
  bool directed = false;
  bool symmetrize = false;
  bool relabel_degree = false;
  double top_fraction = 0.1;
  std::size_t bins = 50;
  std::size_t rank = 0;
  std::size_t fourier_order = 0;
  double alpha0 = 0.0;
  double beta0 = 1.0;
  double eta = 1.5;
  double qt = 2.0;
  double qT = 4.0;
  double horizon = 1.0;
  double step = 1e-3;
  std::string input_poly;
  bool oracle = false;
  std::size_t oracle_intervals = 2000;
  std::string x0;
  std::string p0;
  double p0_value = 0.1;
  bool random_p0 = false;
  std::uint64_t seed = 1;
  std::size_t riccati_steps = 10000;
  std::size_t riccati_stride = 10;
  bool nonlinear = false;
  bool graphon_path = false;
  std::size_t n = 100;
  std::size_t samples = 1;
  std::string converge;
  std::size_t k = 3;
};

class Outputs {
 public:
  explicit Outputs(std::string dir) : dir_(std::move(dir)) {}

  void prepare() const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) input_error("cannot create output directory '" + dir_ + "'");
  }

  void write(const std::string& name, const std::string& contents) {
    const std::string path = (fs::path(dir_) / name).string();
    check(gcx_write_file_atomic(path.c_str(), contents.data(), contents.size()));
    written_.push_back(name);
  }

  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  void write_csv(const std::string& name, const std::vector<std::string>& header, const std::vector<double>& data) {
    std::vector<const char*> cols;
    for (const auto& h : header) cols.push_back(h.c_str());
    char* text = nullptr;
    check(gcx_format_csv(cols.data(), cols.size(), data.data(), header.empty() ? 0 : data.size() / header.size(),
                         &text));
    write(name, take_string(text));
  }

  const std::vector<std::string>& written() const { return written_; }

 private:
  std::string dir_;
  std::vector<std::string> written_;
};

gcx_normalization normalization_of(const std::string& name) {
  if (name == "max-abs") return GCX_NORMALIZE_MAX_ABS;
  if (name == "none") return GCX_NORMALIZE_NONE;
  input_error("unknown normalization '" + name + "' (max-abs | none)");
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string token;
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(cleaned);
  while (in >> token) {
    if (token[0] == '#' || token[0] == '%') {
      std::getline(in, token);
      continue;
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (errno != 0 || end != token.c_str() + token.size() || !std::isfinite(v)) {
      input_error("invalid number '" + token + "' in " + what);
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> read_vector_file(const std::string& path) {
  char* text = nullptr;
  std::size_t length = 0;
  check(gcx_read_file(path.c_str(), &text, &length));
  return parse_numbers(take_string(text), "'" + path + "'");
}

std::vector<std::size_t> parse_sizes(std::string text) {
  if (text.rfind("sizes=", 0) == 0) text = text.substr(6);
  std::vector<std::size_t> out;
  for (const double v : parse_numbers(text, "--converge")) {
    if (v < 1 || v != std::floor(v)) input_error("--converge sizes must be positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) input_error("--converge needs at least one size");
  return out;
}

void require_file(const std::string& path, const std::string& flag) {
  if (path.empty()) return;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) input_error(flag + ": cannot read '" + path + "'");
}

Dataset load_dataset(const Config& cfg) {
  gcx_dataset* raw = nullptr;
  check(gcx_dataset_load(cfg.input.c_str(), cfg.directed ? 1 : 0, &raw));
  Dataset ds(raw);
  for (std::size_t i = 0; i < gcx_dataset_warning_count(ds.get()); ++i) {
    std::cerr << "warning: " << gcx_dataset_warning(ds.get(), i) << "\n";
  }
  if (cfg.symmetrize && !gcx_dataset_is_symmetric(ds.get())) {
    const std::size_t n = gcx_dataset_nodes(ds.get());
    std::vector<double> a(n * n);
    check(gcx_dataset_adjacency(ds.get(), a.data()));
    std::string text;
    char buf[64];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double w = 0.5 * (a[i * n + j] + a[j * n + i]);
        if (w == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", i, j, w);
        text += buf;
      }
    }
    check(gcx_dataset_parse_edge_list(text.data(), text.size(), 0, &raw));
    ds.reset(raw);
  }
  if (cfg.relabel_degree) {
    check(gcx_dataset_relabel_by_degree(ds.get(), &raw));
    ds.reset(raw);
  }
  return ds;
}

// "constant:c" or "sinusoidal:a0,b1,b2,..."
Graphon graphon_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) input_error("--graphon expects 'constant:c' or 'sinusoidal:a0,b1,...'");
  const std::string family = spec.substr(0, colon);
  const std::vector<double> values = parse_numbers(spec.substr(colon + 1), "--graphon");
  gcx_graphon* raw = nullptr;
  if (family == "constant") {
    if (values.size() != 1) input_error("constant graphon takes one value");
    check(gcx_graphon_step(values.data(), 1, 1, &raw));
  } else if (family == "sinusoidal") {
    if (values.empty()) input_error("sinusoidal graphon needs a0");
    check(gcx_graphon_sinusoidal(values[0], values.data() + 1, values.size() - 1, &raw));
  } else {
    input_error("unknown graphon family '" + family + "'");
  }
  return Graphon(raw);
}

Graphon graphon_source(const Config& cfg) {
  if (!cfg.input.empty() && !cfg.graphon.empty()) input_error("give either --input or --graphon, not both");
  if (!cfg.graphon.empty()) return graphon_from_spec(cfg.graphon);
  if (cfg.input.empty()) input_error("a graph source is required (--input or --graphon)");
  const Dataset ds = load_dataset(cfg);
  gcx_graphon* raw = nullptr;
  check(gcx_graphon_from_dataset(ds.get(), normalization_of(cfg.normalization), cfg.symmetrize ? 1 : 0, &raw));
  return Graphon(raw);
}

Spectrum decompose(const gcx_graphon* g) {
  gcx_spectrum* raw = nullptr;
  check(gcx_decompose(g, &raw));
  return Spectrum(raw);
}

std::vector<std::string> indexed(const std::string& first, const std::string& prefix, std::size_t count) {
  std::vector<std::string> h{first};
  for (std::size_t i = 0; i < count; ++i) h.push_back(prefix + std::to_string(i + 1));
  return h;
}

void write_kernel(Outputs& out, const std::string& stem, const gcx_graphon* g, const std::string& normalization) {
  char* text = nullptr;
  check(gcx_graphon_kernel_csv(g, 256, &text));
  out.write(stem + ".csv", take_string(text));
  check(gcx_graphon_kernel_header(g, 256, normalization.c_str(), &text));
  out.write(stem + ".json", take_string(text));
}

// ---- subcommands ----

void cmd_spectra(const Config& cfg, Outputs& out) {
  if (cfg.input.empty()) input_error("spectra needs --input");
  const Dataset ds = load_dataset(cfg);
  char* text = nullptr;
  check(gcx_spectral_report_json(ds.get(), cfg.top_fraction, cfg.bins, normalization_of(cfg.normalization), &text));
  const std::string report_text = take_string(text);
  const json report = json::parse(report_text);

  gcx_graphon* raw = nullptr;
  check(gcx_graphon_from_dataset(ds.get(), normalization_of(cfg.normalization), 0, &raw));
  const Graphon g(raw);
  const Spectrum s = decompose(g.get());
  const std::size_t m = std::min<std::size_t>(report["top_k"].get<std::size_t>(), gcx_spectrum_rank(s.get()));

  out.write("spectral_report.json", report_text);
  std::vector<double> rows;
  std::size_t index = 0;
  for (const double v : report["eigenvalues"]) {
    rows.insert(rows.end(), {static_cast<double>(++index), v, std::abs(v)});
  }
  out.write_csv("eigenvalues.csv", {"index", "eigenvalue", "abs_eigenvalue"}, rows);
  write_kernel(out, "original_kernel", g.get(), cfg.normalization);
  if (m > 0) {
    check(gcx_spectrum_truncate(s.get(), m, &raw));
    const Graphon approx(raw);
    write_kernel(out, "approx_kernel", approx.get(), cfg.normalization);
  } else {
    write_kernel(out, "approx_kernel", g.get(), cfg.normalization);
  }
}

void cmd_approx(const Config& cfg, Outputs& out) {
  const Graphon g = graphon_source(cfg);
  const Spectrum s = decompose(g.get());
  const std::size_t rank = gcx_spectrum_rank(s.get());
  const std::size_t top = cfg.rank ? std::min(cfg.rank, rank) : rank;

  std::vector<double> rows;
  for (std::size_t m = 1; m <= top; ++m) {
    double err = 0.0;
    check(gcx_spectrum_truncation_error(s.get(), m, &err));
    gcx_graphon* raw = nullptr;
    check(gcx_spectrum_truncate(s.get(), m, &raw));
    const Graphon am(raw);
    double direct = 0.0;
    check(gcx_graphon_l2_distance(g.get(), am.get(), &direct));
    rows.insert(rows.end(), {static_cast<double>(m), err, direct});
  }
  out.write_csv("truncation_curve.csv", {"m", "truncation_error", "direct_error"}, rows);

  if (cfg.fourier_order > 0) {
    std::vector<double> bound_rows;
    for (std::size_t m = 1; m <= top; ++m) {
      double t_term = 0.0, f_term = 0.0, bound = 0.0;
      gcx_graphon* raw = nullptr;
      check(gcx_fourier_truncate(s.get(), m, cfg.fourier_order, &t_term, &f_term, &bound, &raw));
      const Graphon apm(raw);
      double measured = 0.0;
      check(gcx_graphon_l2_distance(g.get(), apm.get(), &measured));
      bound_rows.insert(bound_rows.end(), {static_cast<double>(m), static_cast<double>(cfg.fourier_order), t_term,
                                           f_term, bound, measured});
    }
    out.write_csv("fourier_bound.csv",
                  {"m", "fourier_order", "truncation_term", "fourier_term", "bound", "measured_error"}, bound_rows);
  }
}

System make_system(const Config& cfg, const gcx_graphon* g) {
  const std::vector<double> poly = parse_numbers(cfg.input_poly, "--input-poly");
  gcx_system* raw = nullptr;
  check(gcx_system_create(cfg.alpha0, cfg.beta0, g, poly.data(), poly.size(), cfg.horizon, &raw));
  return System(raw);
}

std::vector<double> initial_state(const Config& cfg, std::size_t blocks) {
  if (cfg.x0.empty()) return std::vector<double>(blocks, 1.0);
  std::vector<double> x0 = read_vector_file(cfg.x0);
  if (x0.size() != blocks) {
    input_error("--x0 has " + std::to_string(x0.size()) + " values, expected " + std::to_string(blocks));
  }
  return x0;
}

json min_energy(const Config& cfg, const gcx_system* sys, const gcx_graphon* g, Outputs* out) {
  const std::size_t blocks = gcx_graphon_blocks(g);
  if (blocks == 0) input_error("minimum-energy runs need a network or constant graphon");
  const std::vector<double> x0 = initial_state(cfg, blocks);
  gcx_min_energy* raw = nullptr;
  check(gcx_min_energy_run(sys, x0.data(), blocks, cfg.step, &raw));
  const MinEnergy run(raw);
  json j;
  j["J"] = gcx_min_energy_cost(run.get());
  j["realized_energy"] = gcx_min_energy_realized(run.get());
  j["x0_norm"] = gcx_min_energy_initial_norm(run.get());
  j["xT_norm"] = gcx_min_energy_final_norm(run.get());
  j["steps"] = gcx_min_energy_steps(run.get()) - 1;
  if (out) {
    std::vector<double> states, controls, buf(blocks);
    for (std::size_t k = 0; k < gcx_min_energy_steps(run.get()); ++k) {
      const double t = gcx_min_energy_time(run.get(), k);
      check(gcx_min_energy_state(run.get(), k, buf.data()));
      states.push_back(t);
      states.insert(states.end(), buf.begin(), buf.end());
      check(gcx_min_energy_control(run.get(), k, buf.data()));
      controls.push_back(t);
      controls.insert(controls.end(), buf.begin(), buf.end());
    }
    out->write_csv("min_energy_states.csv", indexed("t", "x_", blocks), states);
    out->write_csv("min_energy_controls.csv", indexed("t", "u_", blocks), controls);
  }
  return j;
}

void cmd_gramian(const Config& cfg, Outputs& out) {
  const Graphon g = graphon_source(cfg);
  const System sys = make_system(cfg, g.get());
  const std::size_t rank = gcx_system_rank(sys.get());
  std::vector<double> lambda(rank), eta(rank), coeffs(rank);
  double scalar = 0.0;
  check(gcx_system_eigenvalues(sys.get(), lambda.data()));
  check(gcx_system_eta(sys.get(), eta.data()));
  check(gcx_gramian(sys.get(), &scalar, coeffs.data()));
  double bound = 0.0;
  int beta0_nonzero = 0, controllable = 0;
  check(gcx_controllability(sys.get(), 1e-12, &bound, &beta0_nonzero, &controllable));

  json j;
  j["scalar"] = scalar;
  j["eigenvalues"] = lambda;
  j["eta"] = eta;
  j["coefficients"] = coeffs;
  j["spectral_lower_bound"] = bound;
  j["beta0_nonzero"] = beta0_nonzero != 0;
  j["exactly_controllable"] = controllable != 0;
  j["verdict"] = controllable ? "exactly controllable" : "not exactly controllable";
  if (cfg.oracle) {
    double rel = 0.0;
    check(gcx_gramian_oracle_error(sys.get(), cfg.oracle_intervals, &rel));
    j["oracle"] = {{"intervals", cfg.oracle_intervals}, {"relative_error", rel}};
  }
  if (!cfg.x0.empty()) {
    if (controllable) {
      j["min_energy"] = min_energy(cfg, sys.get(), g.get(), nullptr);
    } else {
      j["min_energy"] = {{"skipped", "system is not exactly controllable"}};
    }
  }
  std::vector<double> rows;
  for (std::size_t l = 0; l < rank; ++l) {
    rows.insert(rows.end(), {static_cast<double>(l + 1), lambda[l], eta[l], coeffs[l], scalar + coeffs[l]});
  }
  out.write_json("gramian.json", j);
  out.write_csv("gramian_coefficients.csv", {"direction", "lambda", "eta", "coefficient", "eigenvalue"}, rows);
}

void cmd_minenergy(const Config& cfg, Outputs& out) {
  const Graphon g = graphon_source(cfg);
  const System sys = make_system(cfg, g.get());
  const json j = min_energy(cfg, sys.get(), g.get(), &out);
  out.write_json("min_energy.json", j);
}

std::vector<double> epidemic_p0(const Config& cfg, std::size_t n) {
  if (!cfg.p0.empty()) {
    std::vector<double> p0 = read_vector_file(cfg.p0);
    if (p0.size() != n) input_error("--p0 has " + std::to_string(p0.size()) + " values, expected " + std::to_string(n));
    return p0;
  }
  std::vector<double> p0(n, cfg.p0_value);
  if (cfg.random_p0) {
    std::mt19937_64 engine(cfg.seed);
    for (double& v : p0) v = cfg.p0_value * static_cast<double>(engine() >> 11) * 0x1.0p-53;
  }
  return p0;
}

Run epidemic_run(const gcx_epidemic* m, const gcx_riccati* sol, const std::vector<double>& p0, double step,
                 bool nonlinear) {
  gcx_run* raw = nullptr;
  check(gcx_epidemic_run(m, sol, p0.data(), step, nonlinear ? 1 : 0, &raw));
  return Run(raw);
}

void write_run(Outputs& out, const gcx_run* run, std::size_t n, const std::string& states_name,
               const std::string& controls_name) {
  std::vector<double> states, controls, buf(n);
  for (std::size_t k = 0; k < gcx_run_steps(run); ++k) {
    const double t = gcx_run_time(run, k);
    check(gcx_run_state(run, k, buf.data()));
    states.push_back(t);
    states.insert(states.end(), buf.begin(), buf.end());
    check(gcx_run_control(run, k, buf.data()));
    controls.push_back(t);
    controls.insert(controls.end(), buf.begin(), buf.end());
  }
  out.write_csv(states_name, indexed("t", "p_", n), states);
  out.write_csv(controls_name, indexed("t", "u_", n), controls);
}

void cmd_epidemic(const Config& cfg, Outputs& out) {
  if (cfg.input.empty()) input_error("epidemic needs --input");
  if (cfg.riccati_stride == 0) input_error("--riccati-stride must be positive");
  const Dataset ds = load_dataset(cfg);
  gcx_graphon* graw = nullptr;
  check(gcx_graphon_from_dataset(ds.get(), normalization_of(cfg.normalization), cfg.symmetrize ? 1 : 0, &graw));
  const Graphon g(graw);
  const std::size_t n = gcx_graphon_blocks(g.get());
  std::vector<double> contact(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      check(gcx_graphon_evaluate(g.get(), (static_cast<double>(i) + 0.5) / static_cast<double>(n),
                                 (static_cast<double>(j) + 0.5) / static_cast<double>(n), &contact[i * n + j]));
    }
  }
  gcx_epidemic* mraw = nullptr;
  check(gcx_epidemic_create(contact.data(), n, cfg.alpha0, cfg.eta, cfg.beta0, cfg.qt, cfg.qT, cfg.horizon, &mraw));
  const Epidemic model(mraw);
  const std::vector<double> p0 = epidemic_p0(cfg, n);

  gcx_riccati* rraw = nullptr;
  check(gcx_riccati_solve(model.get(), cfg.riccati_steps, cfg.graphon_path ? 1 : 0, &rraw));
  const Riccati sol(rraw);
  const std::size_t times = gcx_riccati_times(sol.get());
  const std::size_t dirs = gcx_riccati_directions(sol.get());
  std::vector<double> grid(times), breve(times);
  std::vector<std::vector<double>> pi(dirs, std::vector<double>(times));
  check(gcx_riccati_time_grid(sol.get(), grid.data()));
  check(gcx_riccati_breve(sol.get(), breve.data()));
  for (std::size_t l = 0; l < dirs; ++l) check(gcx_riccati_pi(sol.get(), l, pi[l].data()));
  std::vector<double> riccati_rows;
  std::vector<std::size_t> nodes;
  for (std::size_t k = 0; k < times; k += cfg.riccati_stride) nodes.push_back(k);
  if (nodes.back() != times - 1) nodes.push_back(times - 1);
  for (const std::size_t k : nodes) {
    riccati_rows.push_back(grid[k]);
    riccati_rows.push_back(breve[k]);
    for (std::size_t l = 0; l < dirs; ++l) riccati_rows.push_back(pi[l][k]);
  }
  std::vector<std::string> riccati_header = indexed("t", "pi_", dirs);
  riccati_header.insert(riccati_header.begin() + 1, "pi_breve");
  out.write_csv("riccati.csv", riccati_header, riccati_rows);

  const Run optimal = epidemic_run(model.get(), sol.get(), p0, cfg.step, false);
  const Run uncontrolled = epidemic_run(model.get(), nullptr, p0, cfg.step, false);
  write_run(out, optimal.get(), n, "states.csv", "controls.csv");

  gcx_projection* praw = nullptr;
  check(gcx_projection_create(model.get(), optimal.get(), &praw));
  const Projection proj(praw);
  const std::size_t rank = gcx_projection_rank(proj.get());
  std::vector<double> es, ec, aux, cbuf(rank), nbuf(n);
  for (std::size_t k = 0; k < gcx_run_steps(optimal.get()); ++k) {
    const double t = gcx_run_time(optimal.get(), k);
    check(gcx_projection_state_coefficients(proj.get(), k, cbuf.data()));
    es.push_back(t);
    es.insert(es.end(), cbuf.begin(), cbuf.end());
    check(gcx_projection_control_coefficients(proj.get(), k, cbuf.data()));
    ec.push_back(t);
    ec.insert(ec.end(), cbuf.begin(), cbuf.end());
    aux.push_back(t);
    check(gcx_projection_auxiliary_state(proj.get(), k, nbuf.data()));
    aux.insert(aux.end(), nbuf.begin(), nbuf.end());
    check(gcx_projection_auxiliary_control(proj.get(), k, nbuf.data()));
    aux.insert(aux.end(), nbuf.begin(), nbuf.end());
  }
  out.write_csv("eigenstates.csv", indexed("t", "pv_", rank), es);
  out.write_csv("eigencontrols.csv", indexed("t", "uv_", rank), ec);
  std::vector<std::string> aux_header = indexed("t", "p_aux_", n);
  for (std::size_t i = 0; i < n; ++i) aux_header.push_back("u_aux_" + std::to_string(i + 1));
  out.write_csv("auxiliary.csv", aux_header, aux);

  double j_opt = 0.0, j_zero = 0.0, recon = 0.0, lambda_max = 0.0;
  int stable = 0;
  check(gcx_run_cost(model.get(), optimal.get(), &j_opt));
  check(gcx_run_cost(model.get(), uncontrolled.get(), &j_zero));
  check(gcx_projection_reconstruction_error(proj.get(), optimal.get(), &recon));
  check(gcx_epidemic_stability(model.get(), &lambda_max, &stable));
  json cost;
  cost["J_optimal"] = j_opt;
  cost["J_zero_control"] = j_zero;
  cost["optimal_improves"] = j_opt < j_zero;
  cost["lambda_max"] = lambda_max;
  cost["stable_uncontrolled"] = stable != 0;
  cost["riccati_error_estimate"] = gcx_riccati_error_estimate(sol.get());
  cost["projection_reconstruction_error"] = recon;
  cost["left_validity_range"] = gcx_run_left_validity_range(optimal.get()) != 0;
  if (cfg.nonlinear) {
    const Run nl = epidemic_run(model.get(), sol.get(), p0, cfg.step, true);
    write_run(out, nl.get(), n, "nonlinear_states.csv", "nonlinear_controls.csv");
    double j_nl = 0.0;
    check(gcx_run_cost(model.get(), nl.get(), &j_nl));
    cost["nonlinear"] = {{"J", j_nl}, {"left_validity_range", gcx_run_left_validity_range(nl.get()) != 0}};
  }
  out.write_json("cost.json", cost);
}

void cmd_sample(const Config& cfg, Outputs& out) {
  if (cfg.samples == 0) input_error("--samples must be positive");
  const Graphon g = graphon_source(cfg);
  std::vector<std::uint64_t> seeds;
  for (std::size_t s = 0; s < cfg.samples; ++s) seeds.push_back(cfg.seed + s);

  std::vector<double> rows;
  for (const std::uint64_t seed : seeds) {
    gcx_dataset* raw = nullptr;
    check(gcx_dataset_sample(g.get(), cfg.n, seed, &raw));
    const Dataset ds(raw);
    char* text = nullptr;
    check(gcx_dataset_edge_list(ds.get(), &text));
    out.write("sample_" + std::to_string(seed) + ".edges", take_string(text));
    double density = 0.0;
    check(gcx_dataset_density(ds.get(), &density));
    rows.insert(rows.end(), {static_cast<double>(seed), static_cast<double>(cfg.n),
                             static_cast<double>(gcx_dataset_edge_count(ds.get())), density});
  }
  out.write_csv("samples.csv", {"seed", "n", "edges", "density"}, rows);

  if (!cfg.converge.empty()) {
    const std::vector<std::size_t> sizes = parse_sizes(cfg.converge);
    char* csv = nullptr;
    check(gcx_convergence_experiment(g.get(), sizes.data(), sizes.size(), seeds.data(), seeds.size(), cfg.k, &csv));
    out.write("convergence.csv", take_string(csv));
  }
}

json option_values(const CLI::App& sub) {
  json j = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_lnames().empty() ? "" : opt->get_lnames().front();
    if (name.empty() || name == "help") continue;
    if (opt->get_expected_max() == 0) {
      j[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto res = opt->reduced_results();
      j[name] = res.size() == 1 ? json(res.front()) : json(res);
    } else {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphon-ctl: spectral analysis and control of graphon and network systems"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(gcx_version()));
  Config cfg;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Network file (edge list or MatrixMarket)");
    sub->add_option("--graphon", cfg.graphon, "Graphon spec: constant:c | sinusoidal:a0,b1,...");
    sub->add_option("--normalization", cfg.normalization, "Adjacency scaling: max-abs | none");
    sub->add_flag("--directed", cfg.directed, "Read edge lists as directed");
    sub->add_flag("--symmetrize", cfg.symmetrize, "Replace directed data by (A + A^T)/2");
    sub->add_flag("--relabel-degree", cfg.relabel_degree, "Order nodes by descending degree");
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "Output directory"); };

  CLI::App* spectra = app.add_subcommand("spectra", "Adjacency spectrum, histogram and top-fraction truncation");
  add_source(spectra);
  add_out(spectra);
  spectra->add_option("--top-fraction", cfg.top_fraction, "Fraction of eigendirections kept")
      ->check(CLI::Range(0.0, 1.0));
  spectra->add_option("--bins", cfg.bins, "Histogram bins")->check(CLI::PositiveNumber);

  CLI::App* approx = app.add_subcommand("approx", "Spectral truncation curve and Fourier bound");
  add_source(approx);
  add_out(approx);
  approx->add_option("--rank", cfg.rank, "Largest truncation rank m (0: full rank)");
  approx->add_option("--fourier-order", cfg.fourier_order, "Fourier order n of the eigenfunction approximation");

  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--alpha0", cfg.alpha0, "Drift coefficient alpha0");
    sub->add_option("--beta0", cfg.beta0, "Input coefficient beta0");
    sub->add_option("--input-poly", cfg.input_poly, "Input polynomial coefficients beta1,beta2,...");
    sub->add_option("--horizon", cfg.horizon, "Horizon T");
    sub->add_option("--step", cfg.step, "Integration step");
    sub->add_option("--x0", cfg.x0, "Initial state file (one value per block)");
  };
  CLI::App* gramian = app.add_subcommand("gramian", "Controllability Gramian and verdict");
  add_source(gramian);
  add_out(gramian);
  add_system(gramian);
  gramian->add_flag("--oracle", cfg.oracle, "Compare with Simpson quadrature of the matrix form");
  gramian->add_option("--oracle-intervals", cfg.oracle_intervals, "Simpson intervals for --oracle");

  CLI::App* minenergy = app.add_subcommand("minenergy", "Minimum-energy steering to the origin");
  add_source(minenergy);
  add_out(minenergy);
  add_system(minenergy);

  CLI::App* epidemic = app.add_subcommand("epidemic", "Spectral LQR control of network epidemics");
  add_source(epidemic);
  add_out(epidemic);
  epidemic->add_option("--alpha0", cfg.alpha0, "Recovery rate alpha (alpha0 of the linearization)");
  epidemic->add_option("--beta0", cfg.beta0, "Control gain beta0");
  epidemic->add_option("--eta", cfg.eta, "Infection strength eta");
  epidemic->add_option("--qt", cfg.qt, "Running state weight q_t")->check(CLI::NonNegativeNumber);
  epidemic->add_option("--qT", cfg.qT, "Terminal weight q_T")->check(CLI::NonNegativeNumber);
  epidemic->add_option("--horizon", cfg.horizon, "Horizon T");
  epidemic->add_option("--step", cfg.step, "Simulation step");
  epidemic->add_option("--riccati-steps", cfg.riccati_steps, "Riccati RK4 steps");
  epidemic->add_option("--riccati-stride", cfg.riccati_stride, "Write every k-th Riccati node");
  epidemic->add_option("--p0", cfg.p0, "Initial infected fractions file");
  epidemic->add_option("--p0-value", cfg.p0_value, "Uniform initial fraction (or upper bound with --random-p0)");
  epidemic->add_flag("--random-p0", cfg.random_p0, "Draw initial fractions uniformly from [0, p0-value]");
  epidemic->add_option("--seed", cfg.seed, "Seed for --random-p0");
  epidemic->add_flag("--nonlinear", cfg.nonlinear, "Also run the nonlinear model under the same feedback");
  epidemic->add_flag("--graphon-path", cfg.graphon_path, "Solve the Riccati equations from the graphon spectrum");

  CLI::App* sample = app.add_subcommand("sample", "Sample exchangeable random graphs from a graphon");
  add_source(sample);
  add_out(sample);
  sample->add_option("--n", cfg.n, "Nodes per sample")->check(CLI::PositiveNumber);
  sample->add_option("--seed", cfg.seed, "First seed");
  sample->add_option("--samples", cfg.samples, "Number of samples (seeds seed, seed+1, ...)");
  sample->add_option("--converge", cfg.converge, "Eigenvalue convergence sizes, e.g. 50,100,200");
  sample->add_option("--k", cfg.k, "Eigenvalues per sign in the convergence table");

  // the epidemic defaults differ from the control subcommands
  epidemic->get_option("--alpha0")->default_str("-0.5");
  epidemic->get_option("--normalization")->default_str("none");
  epidemic->preparse_callback([&](std::size_t) {
    cfg.alpha0 = -0.5;
    cfg.normalization = "none";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    require_file(cfg.input, "--input");
    require_file(cfg.x0, "--x0");
    require_file(cfg.p0, "--p0");
    Outputs out(cfg.out);
    out.prepare();
    const std::string name = sub->get_name();
    if (name == "spectra") cmd_spectra(cfg, out);
    if (name == "approx") cmd_approx(cfg, out);
    if (name == "gramian") cmd_gramian(cfg, out);
    if (name == "minenergy") cmd_minenergy(cfg, out);
    if (name == "epidemic") cmd_epidemic(cfg, out);
    if (name == "sample") cmd_sample(cfg, out);

    json manifest;
    manifest["tool"] = "graphon-ctl";
    manifest["version"] = gcx_version();
    manifest["command"] = name;
    manifest["config"] = option_values(*sub);
    manifest["seed"] = cfg.seed;
    manifest["outputs"] = out.written();
    out.write_json("manifest.json", manifest);
  } catch (const CliFailure& f) {
    std::cerr << "graphon-ctl " << sub->get_name() << ": " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "graphon-ctl " << sub->get_name() << ": " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
