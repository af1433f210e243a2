// Copyright 2026 The SNAC Authors
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

// Pipeline pieces behind the command-line tool: orbit computation with an
// optional on-disk cache, metric reports, and the experiment sweeps.
//
// All numeric output goes through format_number (6 significant digits, '.'
// decimal point) and all sweeps gather their rows before sorting them by
// sweep key, so output is byte-identical for any worker count.

#ifndef SNAC_HARNESS_HPP_
#define SNAC_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snac/automorphism.hpp"
#include "snac/graph.hpp"
#include "snac/io.hpp"
#include "snac/metrics.hpp"
#include "snac/synthesis.hpp"

namespace snac {

std::string format_number(double value);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& out) const;
  std::string csv() const;
  // Array of objects keyed by column name.
  std::string json() const;
};

struct LoadedGraph {
  Graph graph;
  std::uint64_t hash = 0;  // of the file contents
};
LoadedGraph load_graph(const std::string& path);

struct OrbitRequest {
  SymmetryOptions symmetry;
  const OrbitCache* cache = nullptr;
};
OrbitPartition compute_orbits(const LoadedGraph& g, const OrbitRequest& request);

struct OrbitStats {
  int nodes = 0;
  std::size_t edges = 0;
  int classes = 0;
  double avg_class_length = 1.0;
  double largest_component_prop = 0.0;
  double seconds = 0.0;
};
OrbitStats orbit_stats(const Graph& g, const OrbitPartition& orbits);
std::string format_orbit_stats(const OrbitStats& stats);

struct EvalInputs {
  const Graph* source = nullptr;
  const Graph* target = nullptr;
  const OrbitPartition* source_orbits = nullptr;
  const OrbitPartition* target_orbits = nullptr;
  const NodeMapping* benchmark = nullptr;
  const NodeMapping* result = nullptr;           // optional
  const RankedCandidates* candidates = nullptr;  // optional
  std::vector<int> ks;
  SnacOptions snac;
};

// SNAC and AC need a result mapping; P@k and MAP need candidates. Throws
// UndefinedMetric for empty mappings and DataError when the result maps a
// source outside the benchmark domain.
MetricReport evaluate(const EvalInputs& inputs);

void write_report_text(const MetricReport& report, std::ostream& out);
Table report_table(const MetricReport& report);
std::string report_json(const MetricReport& report);

enum class ExperimentKind { kBasicAbility, kStability, kStats, kAppendixTiming };

std::string_view kind_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(std::string_view name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kBasicAbility;
  // Edge-list paths. When empty, graphs come from `generator`.
  std::vector<std::string> datasets;
  std::optional<GeneratorConfig> generator;
  // Shuffle ratios (basic-ability) or twin ratios (stability).
  std::vector<double> sweep;
  // Recognition probabilities for stability.
  std::vector<double> x_values = {1.0};
  int seeds = 1;
  std::uint64_t base_seed = 1;
  // appendix-timing: generated graphs are `components` copies of `distinct`
  // connected Gilbert graphs; timings keep the best of `repeats` runs.
  int components = 0;
  int distinct = 1;
  int repeats = 3;
  int workers = 1;
  std::string output;  // empty: standard output

  // Throws std::invalid_argument on illegal values.
  void validate() const;
  // Keys mirror the field names; "kind" uses the kind_name spelling.
  static ExperimentSpec from_json(std::string_view text);
};

struct ExperimentResult {
  Table table;
  // Per-dataset failures that did not stop the run (stats only).
  std::vector<std::string> errors;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

// 64-bit mix of a base seed and stream indices.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b = 0);

}  // namespace snac

#endif  // SNAC_HARNESS_HPP_
