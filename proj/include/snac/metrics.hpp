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

// Network alignment evaluation.
//
// The equivalence class mapping (ECM) sends every source symmetry class to
// the target class that receives most of its members under the benchmark
// mapping. SNAC then credits a result pair (u1, u2) when u2's class is the
// ECM image of u1's class, so a model is not penalized for confusing nodes
// that no topology-only method can tell apart. The ECM depends only on the
// two graphs and the benchmark and can be shared by any number of result
// mappings.

#ifndef SNAC_METRICS_HPP_
#define SNAC_METRICS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "snac/automorphism.hpp"
#include "snac/graph.hpp"

namespace snac {

enum class MappingRole { kBenchmark, kResult };

// Partial one-to-one map between two node sets.
class NodeMapping {
 public:
  NodeMapping() = default;
  // Throws DataError when an index is outside [0, source_nodes) or
  // [0, target_nodes), or when either side repeats a node.
  NodeMapping(std::vector<std::pair<NodeId, NodeId>> pairs, MappingRole role,
              int source_nodes, int target_nodes);

  const std::vector<std::pair<NodeId, NodeId>>& pairs() const {
    return pairs_;
  }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  MappingRole role() const { return role_; }
  int source_nodes() const { return static_cast<int>(forward_.size()); }
  int target_nodes() const { return target_nodes_; }

  std::optional<NodeId> target_of(NodeId source) const;

 private:
  std::vector<std::pair<NodeId, NodeId>> pairs_;
  std::vector<NodeId> forward_;  // -1 when unmapped
  int target_nodes_ = 0;
  MappingRole role_ = MappingRole::kResult;
};

// Per source node, candidate targets best first.
class RankedCandidates {
 public:
  RankedCandidates() = default;
  // Throws DataError on repeated sources, repeated candidates in one list or
  // out-of-range indices.
  RankedCandidates(std::vector<std::pair<NodeId, std::vector<NodeId>>> lists,
                   int source_nodes, int target_nodes);

  // Empty when the source has no list.
  std::span<const NodeId> candidates(NodeId source) const;
  // 1-based position of `target` in the source's list.
  std::optional<int> rank(NodeId source, NodeId target) const;
  const std::vector<std::pair<NodeId, std::vector<NodeId>>>& lists() const {
    return lists_;
  }

 private:
  std::vector<std::pair<NodeId, std::vector<NodeId>>> lists_;
  std::vector<int> list_of_;  // source -> index into lists_, -1 if none
};

struct ClassMapping {
  // Per source class: the ECM image, or -1 when no member is in the
  // benchmark domain.
  std::vector<int> target_class;
  // Per source class: (target class, tally) sorted by target class.
  std::vector<std::vector<std::pair<int, int>>> votes;

  bool mapped(int source_class) const {
    return target_class[source_class] >= 0;
  }
  int tally(int source_class, int target_class) const;
  int total_votes(int source_class) const;
};

// Majority vote of benchmark images per source class, ties broken towards
// the target class with the smallest first member (the smallest class
// index). Throws UndefinedMetric on an empty benchmark and DataError when
// the benchmark does not fit the partitions.
ClassMapping compute_ecm(const OrbitPartition& source,
                         const OrbitPartition& target,
                         const NodeMapping& benchmark);

struct SnacOptions {
  // Credit n_[u2] / sum_j n_j instead of the 0/1 indicator, so a pair landing
  // in a minority class of a split vote earns partial credit. Experimental.
  bool weighted_ecm = false;
};

struct SnacResult {
  double score = 0.0;
  std::size_t pairs = 0;
  // Pairs whose source class has no ECM image; they score 0.
  std::size_t unmapped = 0;
};

SnacResult snac_detailed(const NodeMapping& result, const ClassMapping& ecm,
                         const OrbitPartition& source,
                         const OrbitPartition& target,
                         const SnacOptions& options = {});
// Throws UndefinedMetric on an empty result.
double snac(const NodeMapping& result, const ClassMapping& ecm,
            const OrbitPartition& source, const OrbitPartition& target,
            const SnacOptions& options = {});

// Fraction of pairs agreeing with the benchmark. Both mappings must cover
// the same source nodes.
double accuracy(const NodeMapping& result, const NodeMapping& benchmark);

// Over the benchmark domain: fraction whose benchmark target is among the
// first k candidates. Throws std::invalid_argument for k == 0.
double precision_at_k(const RankedCandidates& candidates,
                      const NodeMapping& benchmark, int k);

// Over the benchmark domain: mean reciprocal rank of the benchmark target,
// 0 when it is not listed.
double map_score(const RankedCandidates& candidates,
                 const NodeMapping& benchmark);

// 2 |{(u,v) in E1 : (phi(u), phi(v)) in E2}| / (|E1| + |E2|).
double interop(const Graph& g1, const Graph& g2, const NodeMapping& benchmark);

// |V| / |V/~|.
double avg_class_length(const OrbitPartition& partition);

struct MetricReport {
  std::optional<double> snac;
  std::optional<double> ac;
  std::map<int, double> precision_at_k;
  std::optional<double> map_score;
  std::optional<double> interop;  // undefined when both graphs are edgeless
  double avg_class_length_source = 1.0;
  double avg_class_length_target = 1.0;
  std::size_t result_pairs = 0;
  std::size_t unmapped_pairs = 0;
  int source_nodes = 0;
  int source_classes = 0;
  int target_nodes = 0;
  int target_classes = 0;
};

}  // namespace snac

#endif  // SNAC_METRICS_HPP_
