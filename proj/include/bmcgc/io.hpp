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

#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "bmcgc/map_solver.hpp"
#include "bmcgc/sampler.hpp"
#include "bmcgc/synthesis.hpp"

namespace bmcgc {

/// A generated trial: ground-truth points plus the noisy partial
/// observations, together with everything needed to regenerate it.
struct TrialFixture {
  int n = 0;
  int d = 0;
  double fraction = 1.0;
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
  PointSet points;
  ObservationSet observations;

  DistanceMatrix truth() const;
};

TrialFixture make_trial_fixture(int n, int d, double fraction,
                                const NoiseSpec& spec, std::uint64_t seed);

// Fixture files: { format, rng, n, d, fraction, snr_db, seed,
//                  points (row-major), mask ([i,j] upper pairs),
//                  observed ([i,j,value]) }.
nlohmann::json fixture_to_json(const TrialFixture& fixture);
TrialFixture fixture_from_json(const nlohmann::json& j);

nlohmann::json summary_to_json(const PosteriorSummary& summary,
                               std::uint64_t seed,
                               std::optional<double> relative_error);
nlohmann::json map_result_to_json(const MapResult& result, double lambda,
                                  std::uint64_t seed,
                                  std::optional<double> relative_error);

// Config fragments; absent keys keep the defaults.
ModelHyperParams hyperparams_from_json(const nlohmann::json& j, int d);
nlohmann::json hyperparams_to_json(const ModelHyperParams& hp);
ChainConfig chain_config_from_json(const nlohmann::json& j);
nlohmann::json chain_config_to_json(const ChainConfig& cfg);
MapConfig map_config_from_json(const nlohmann::json& j);
nlohmann::json map_config_to_json(const MapConfig& cfg);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& content);

/// Shortest round-trip decimal representation; keeps CSV output
/// reproducible byte for byte.
std::string format_double(double value);

/// Reads a matrix from JSON: either {"n": ..., "entries": row-major} or a
/// plain nested array [[...], ...].
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace bmcgc
