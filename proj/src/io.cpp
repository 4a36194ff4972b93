// Copyright 2026 the bmcgc authors
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

#include "bmcgc/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "bmcgc/geometry.hpp"
#include "bmcgc/rng.hpp"

namespace bmcgc {

namespace {

std::vector<double> row_major(const Matrix& m) {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
  return flat;
}

Matrix from_row_major(const std::vector<double>& flat, Eigen::Index rows,
                      Eigen::Index cols) {
  if (static_cast<Eigen::Index>(flat.size()) != rows * cols)
    throw std::invalid_argument("matrix payload has wrong length");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = flat[static_cast<std::size_t>(i * cols + j)];
  return m;
}

}  // namespace

DistanceMatrix TrialFixture::truth() const { return edm_from_points(points); }

TrialFixture make_trial_fixture(int n, int d, double fraction,
                                const NoiseSpec& spec, std::uint64_t seed) {
  Trial trial = generate_trial(n, d, fraction, spec, seed);
  TrialFixture fixture;
  fixture.n = n;
  fixture.d = d;
  fixture.fraction = fraction;
  fixture.snr_db = spec.snr_db;
  fixture.seed = seed;
  fixture.points = std::move(trial.points);
  fixture.observations = std::move(trial.observations);
  return fixture;
}

nlohmann::json fixture_to_json(const TrialFixture& fixture) {
  nlohmann::json j;
  j["format"] = "bmcgc.trial/1";
  j["rng"] = kRngAlgorithm;
  j["n"] = fixture.n;
  j["d"] = fixture.d;
  j["fraction"] = fixture.fraction;
  if (fixture.snr_db)
    j["snr_db"] = *fixture.snr_db;
  else
    j["snr_db"] = nullptr;
  j["seed"] = fixture.seed;
  j["points"] = row_major(fixture.points.coords);
  auto mask = nlohmann::json::array();
  auto observed = nlohmann::json::array();
  for (const auto& p : fixture.observations.pairs()) {
    mask.push_back({p.i, p.j});
    observed.push_back({p.i, p.j, p.value});
  }
  j["mask"] = std::move(mask);
  j["observed"] = std::move(observed);
  return j;
}

TrialFixture fixture_from_json(const nlohmann::json& j) {
  TrialFixture fixture;
  fixture.n = j.at("n").get<int>();
  fixture.d = j.at("d").get<int>();
  fixture.fraction = j.at("fraction").get<double>();
  if (j.contains("snr_db") && !j.at("snr_db").is_null())
    fixture.snr_db = j.at("snr_db").get<double>();
  fixture.seed = j.at("seed").get<std::uint64_t>();
  fixture.points = PointSet(
      from_row_major(j.at("points").get<std::vector<double>>(), fixture.n, fixture.d));

  const auto& observed = j.at("observed");
  if (j.contains("mask") && j.at("mask").size() != observed.size())
    throw std::invalid_argument("fixture: mask and observed lists disagree");
  std::vector<ObservedPair> pairs;
  pairs.reserve(observed.size());
  for (const auto& entry : observed) {
    if (entry.size() != 3)
      throw std::invalid_argument("fixture: observed entries must be [i, j, value]");
    pairs.push_back({entry[0].get<std::int32_t>(), entry[1].get<std::int32_t>(),
                     entry[2].get<double>()});
  }
  fixture.observations =
      ObservationSet(fixture.n, std::move(pairs), fixture.snr_db, fixture.seed);
  return fixture;
}

nlohmann::json summary_to_json(const PosteriorSummary& summary,
                               std::uint64_t seed,
                               std::optional<double> relative_error) {
  nlohmann::json j;
  j["format"] = "bmcgc.result/1";
  j["method"] = "bmcgc";
  j["n"] = summary.edm_mean.rows();
  j["seed"] = seed;
  j["acceptance_rate"] = summary.acceptance_rate;
  j["edm_mean"] = row_major(summary.edm_mean);
  j["edm_std"] = row_major(summary.edm_std);
  if (relative_error)
    j["relative_error"] = *relative_error;
  else
    j["relative_error"] = nullptr;
  if (!summary.error_trace.empty()) j["error_trace"] = summary.error_trace;
  return j;
}

nlohmann::json map_result_to_json(const MapResult& result, double lambda,
                                  std::uint64_t seed,
                                  std::optional<double> relative_error) {
  nlohmann::json j;
  j["format"] = "bmcgc.result/1";
  j["method"] = "map";
  j["n"] = result.edm.n();
  j["seed"] = seed;
  j["lambda"] = lambda;
  j["converged"] = result.converged;
  j["final_gradient_norm"] = result.final_gradient_norm;
  j["iterations"] = result.iterations;
  j["objective_trace"] = result.objective_trace;
  j["edm"] = row_major(result.edm.entries);
  j["points"] = row_major(result.points.coords);
  if (relative_error)
    j["relative_error"] = *relative_error;
  else
    j["relative_error"] = nullptr;
  return j;
}

ModelHyperParams hyperparams_from_json(const nlohmann::json& j, int d) {
  ModelHyperParams hp = ModelHyperParams::defaults_for(d);
  if (j.contains("tau")) hp.tau = j.at("tau").get<double>();
  if (j.contains("a0")) hp.a0 = j.at("a0").get<double>();
  if (j.contains("b0")) hp.b0 = j.at("b0").get<double>();
  if (j.contains("beta0")) hp.beta0 = j.at("beta0").get<double>();
  if (j.contains("nu0")) hp.nu0 = j.at("nu0").get<double>();
  if (j.contains("u0")) {
    const auto u0 = j.at("u0").get<std::vector<double>>();
    if (static_cast<int>(u0.size()) != d)
      throw std::invalid_argument("hyperparams: u0 must have length d");
    hp.u0 = Eigen::Map<const Vector>(u0.data(), d);
  }
  if (j.contains("W0")) {
    const auto& w = j.at("W0");
    if (static_cast<int>(w.size()) != d)
      throw std::invalid_argument("hyperparams: W0 must be d x d");
    for (int r = 0; r < d; ++r) {
      if (static_cast<int>(w[r].size()) != d)
        throw std::invalid_argument("hyperparams: W0 must be d x d");
      for (int c = 0; c < d; ++c) hp.W0(r, c) = w[r][c].get<double>();
    }
  }
  hp.validate(d);
  return hp;
}

nlohmann::json hyperparams_to_json(const ModelHyperParams& hp) {
  nlohmann::json j;
  j["tau"] = hp.tau;
  j["a0"] = hp.a0;
  j["b0"] = hp.b0;
  j["beta0"] = hp.beta0;
  j["nu0"] = hp.nu0;
  j["u0"] = std::vector<double>(hp.u0.data(), hp.u0.data() + hp.u0.size());
  auto w0 = nlohmann::json::array();
  for (Eigen::Index r = 0; r < hp.W0.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < hp.W0.cols(); ++c) row.push_back(hp.W0(r, c));
    w0.push_back(std::move(row));
  }
  j["W0"] = std::move(w0);
  return j;
}

ChainConfig chain_config_from_json(const nlohmann::json& j) {
  ChainConfig cfg;
  if (j.contains("total_iterations")) cfg.total_iterations = j.at("total_iterations").get<int>();
  if (j.contains("burn_in")) cfg.burn_in = j.at("burn_in").get<int>();
  if (j.contains("thin")) cfg.thin = j.at("thin").get<int>();
  if (j.contains("samples_to_average"))
    cfg.samples_to_average = j.at("samples_to_average").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("random_scan")) cfg.random_scan = j.at("random_scan").get<bool>();
  if (j.contains("adapt_proposal")) cfg.adapt_proposal = j.at("adapt_proposal").get<bool>();
  cfg.validate();
  return cfg;
}

nlohmann::json chain_config_to_json(const ChainConfig& cfg) {
  return {{"total_iterations", cfg.total_iterations},
          {"burn_in", cfg.burn_in},
          {"thin", cfg.thin},
          {"samples_to_average", cfg.samples_to_average},
          {"seed", cfg.seed},
          {"random_scan", cfg.random_scan},
          {"adapt_proposal", cfg.adapt_proposal}};
}

MapConfig map_config_from_json(const nlohmann::json& j) {
  MapConfig cfg;
  if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<double>();
  if (j.contains("max_iterations")) cfg.max_iterations = j.at("max_iterations").get<int>();
  if (j.contains("gradient_tolerance"))
    cfg.gradient_tolerance = j.at("gradient_tolerance").get<double>();
  if (j.contains("initial_step")) cfg.initial_step = j.at("initial_step").get<double>();
  if (j.contains("step_shrink")) cfg.step_shrink = j.at("step_shrink").get<double>();
  if (j.contains("step_grow")) cfg.step_grow = j.at("step_grow").get<double>();
  if (j.contains("armijo_c")) cfg.armijo_c = j.at("armijo_c").get<double>();
  if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.validate();
  return cfg;
}

nlohmann::json map_config_to_json(const MapConfig& cfg) {
  return {{"lambda", cfg.lambda},
          {"max_iterations", cfg.max_iterations},
          {"gradient_tolerance", cfg.gradient_tolerance},
          {"initial_step", cfg.initial_step},
          {"step_shrink", cfg.step_shrink},
          {"step_grow", cfg.step_grow},
          {"armijo_c", cfg.armijo_c},
          {"restarts", cfg.restarts},
          {"seed", cfg.seed}};
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("entries")) {
    const auto n = j.at("n").get<Eigen::Index>();
    return from_row_major(j.at("entries").get<std::vector<double>>(), n, n);
  }
  if (j.is_object() && j.contains("edm_mean")) {
    const auto n = j.at("n").get<Eigen::Index>();
    return from_row_major(j.at("edm_mean").get<std::vector<double>>(), n, n);
  }
  if (j.is_object() && j.contains("edm")) {
    const auto n = j.at("n").get<Eigen::Index>();
    return from_row_major(j.at("edm").get<std::vector<double>>(), n, n);
  }
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix JSON must be a nested array or carry 'entries'");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw std::invalid_argument("matrix JSON rows have differing lengths");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

}  // namespace bmcgc
