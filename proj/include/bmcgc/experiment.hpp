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
#include <string>
#include <vector>

#include "bmcgc/io.hpp"

namespace bmcgc {

/// A full experiment grid: one method over fractions x trials, every cell
/// seeded from (base_seed, fraction index, trial) so the grid is a pure
/// function of this spec.
struct ExperimentSpec {
  std::string method = "bmcgc";  // "bmcgc" or "map"
  int n = 100;
  int d = 3;
  std::vector<double> fractions;
  std::optional<double> snr_db;
  int trials = 20;
  std::uint64_t base_seed = 1;
  int threads = 0;  // 0: hardware concurrency
  std::string output_dir = "experiment_out";
  ChainConfig chain;
  ModelHyperParams hyperparams;  // resolved against d
  MapConfig map_config;
  int posterior_entry_count = 9;

  void validate() const;
};

ExperimentSpec experiment_spec_from_json(const nlohmann::json& j);
nlohmann::json experiment_spec_to_json(const ExperimentSpec& spec);

/// Collision-free seed for one grid cell.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t fraction_index,
                         int trial);

struct TrialOutcome {
  double fraction = 0.0;
  int trial = 0;
  bool ok = false;
  std::string message;
  double error = 0.0;
  double seconds = 0.0;
  std::vector<double> trace;  // relative-error (bmcgc) or objective (map)
};

struct PosteriorEntry {
  int i = 0, j = 0;
  double true_value = 0.0;
  double posterior_mean = 0.0;
  std::vector<double> samples;
};

struct HeldOutEntries {
  double fraction = 0.0;
  int trial = 0;
  std::vector<PosteriorEntry> pairs;
};

struct FractionSummary {
  double fraction = 0.0;
  double mean_error = 0.0;
  double std_error = 0.0;  // sample standard deviation over trials
  int trials = 0;
};

struct ExperimentResult {
  std::vector<TrialOutcome> cells;  // fraction-major, trial-minor order
  std::vector<FractionSummary> summary;
  std::vector<HeldOutEntries> posterior_entries;
  bool all_ok = false;
};

/// Runs every cell of the grid in a small worker pool. Cell outcomes are
/// written into fixed slots, so the result does not depend on scheduling.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Writes errors.csv, summary.csv, traces.json and posterior_entries.json
/// into spec.output_dir (created if needed). Failed cells are skipped in the
/// CSVs; everything that succeeded is flushed.
void write_experiment_outputs(const ExperimentSpec& spec,
                              const ExperimentResult& result);

/// Uniformly samples `count` distinct unobserved off-diagonal pairs (i < j).
/// Returns fewer when the mask leaves fewer unobserved pairs.
std::vector<std::pair<int, int>> sample_unobserved_pairs(
    const ObservationSet& obs, int count, std::uint64_t seed);

}  // namespace bmcgc
