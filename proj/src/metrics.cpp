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

#include "snac/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "snac/error.hpp"

namespace snac {

NodeMapping::NodeMapping(std::vector<std::pair<NodeId, NodeId>> pairs,
                         MappingRole role, int source_nodes, int target_nodes)
    : pairs_(std::move(pairs)),
      forward_(source_nodes, -1),
      target_nodes_(target_nodes),
      role_(role) {
  std::vector<char> hit(target_nodes, 0);
  for (const auto& [s, t] : pairs_) {
    if (s < 0 || s >= source_nodes || t < 0 || t >= target_nodes) {
      throw DataError("mapping index out of range");
    }
    if (forward_[s] != -1) throw DataError("mapping repeats a source node");
    if (hit[t]) throw DataError("mapping repeats a target node");
    forward_[s] = t;
    hit[t] = 1;
  }
}

std::optional<NodeId> NodeMapping::target_of(NodeId source) const {
  if (source < 0 || source >= source_nodes() || forward_[source] < 0) {
    return std::nullopt;
  }
  return forward_[source];
}

RankedCandidates::RankedCandidates(
    std::vector<std::pair<NodeId, std::vector<NodeId>>> lists,
    int source_nodes, int target_nodes)
    : lists_(std::move(lists)), list_of_(source_nodes, -1) {
  for (std::size_t i = 0; i < lists_.size(); ++i) {
    const auto& [source, targets] = lists_[i];
    if (source < 0 || source >= source_nodes) {
      throw DataError("candidate source out of range");
    }
    if (list_of_[source] != -1) {
      throw DataError("candidate list repeated for one source");
    }
    list_of_[source] = static_cast<int>(i);
    std::vector<NodeId> sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DataError("candidate list repeats a target");
    }
    if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= target_nodes)) {
      throw DataError("candidate target out of range");
    }
  }
}

std::span<const NodeId> RankedCandidates::candidates(NodeId source) const {
  if (source < 0 || source >= static_cast<int>(list_of_.size()) ||
      list_of_[source] < 0) {
    return {};
  }
  return lists_[list_of_[source]].second;
}

std::optional<int> RankedCandidates::rank(NodeId source, NodeId target) const {
  auto list = candidates(source);
  auto it = std::find(list.begin(), list.end(), target);
  if (it == list.end()) return std::nullopt;
  return static_cast<int>(it - list.begin()) + 1;
}

int ClassMapping::tally(int source_class, int target) const {
  for (const auto& [c, n] : votes[source_class]) {
    if (c == target) return n;
  }
  return 0;
}

int ClassMapping::total_votes(int source_class) const {
  int total = 0;
  for (const auto& [c, n] : votes[source_class]) total += n;
  return total;
}

ClassMapping compute_ecm(const OrbitPartition& source,
                         const OrbitPartition& target,
                         const NodeMapping& benchmark) {
  if (benchmark.empty()) throw UndefinedMetric("empty benchmark mapping");
  if (benchmark.source_nodes() != source.node_count() ||
      benchmark.target_nodes() != target.node_count()) {
    throw DataError("benchmark does not match the orbit partitions");
  }
  const int classes = source.class_count();
  std::vector<std::map<int, int>> tallies(classes);
  for (const auto& [s, t] : benchmark.pairs()) {
    ++tallies[source.class_of[s]][target.class_of[t]];
  }
  ClassMapping ecm;
  ecm.target_class.assign(classes, -1);
  ecm.votes.resize(classes);
  for (int c = 0; c < classes; ++c) {
    int best = -1;
    int best_votes = 0;
    // Ascending target class, strict comparison: ties keep the smaller
    // class.
    for (const auto& [tc, n] : tallies[c]) {
      ecm.votes[c].emplace_back(tc, n);
      if (n > best_votes) {
        best = tc;
        best_votes = n;
      }
    }
    ecm.target_class[c] = best;
  }
  return ecm;
}

SnacResult snac_detailed(const NodeMapping& result, const ClassMapping& ecm,
                         const OrbitPartition& source,
                         const OrbitPartition& target,
                         const SnacOptions& options) {
  if (result.empty()) throw UndefinedMetric("SNAC of an empty mapping");
  if (result.source_nodes() != source.node_count() ||
      result.target_nodes() != target.node_count() ||
      static_cast<int>(ecm.target_class.size()) != source.class_count()) {
    throw DataError("result mapping does not match the orbit partitions");
  }
  SnacResult out;
  out.pairs = result.size();
  double credit = 0.0;
  for (const auto& [s, t] : result.pairs()) {
    const int sc = source.class_of[s];
    const int tc = target.class_of[t];
    if (!ecm.mapped(sc)) {
      ++out.unmapped;
      continue;
    }
    if (options.weighted_ecm) {
      credit += static_cast<double>(ecm.tally(sc, tc)) / ecm.total_votes(sc);
    } else if (ecm.target_class[sc] == tc) {
      credit += 1.0;
    }
  }
  out.score = credit / static_cast<double>(out.pairs);
  return out;
}

double snac(const NodeMapping& result, const ClassMapping& ecm,
            const OrbitPartition& source, const OrbitPartition& target,
            const SnacOptions& options) {
  return snac_detailed(result, ecm, source, target, options).score;
}

double accuracy(const NodeMapping& result, const NodeMapping& benchmark) {
  if (result.empty() || benchmark.empty()) {
    throw UndefinedMetric("accuracy of an empty mapping");
  }
  if (result.size() != benchmark.size()) {
    throw DataError("result and benchmark cover different source nodes");
  }
  std::size_t correct = 0;
  for (const auto& [s, t] : result.pairs()) {
    auto expected = benchmark.target_of(s);
    if (!expected) {
      throw DataError("result and benchmark cover different source nodes");
    }
    correct += (*expected == t);
  }
  return static_cast<double>(correct) / static_cast<double>(result.size());
}

double precision_at_k(const RankedCandidates& candidates,
                      const NodeMapping& benchmark, int k) {
  if (k < 1) throw std::invalid_argument("precision_at_k needs k >= 1");
  if (benchmark.empty()) throw UndefinedMetric("empty benchmark mapping");
  std::size_t hits = 0;
  for (const auto& [s, t] : benchmark.pairs()) {
    auto r = candidates.rank(s, t);
    hits += (r && *r <= k);
  }
  return static_cast<double>(hits) / static_cast<double>(benchmark.size());
}

double map_score(const RankedCandidates& candidates,
                 const NodeMapping& benchmark) {
  if (benchmark.empty()) throw UndefinedMetric("empty benchmark mapping");
  double total = 0.0;
  for (const auto& [s, t] : benchmark.pairs()) {
    if (auto r = candidates.rank(s, t)) total += 1.0 / *r;
  }
  return total / static_cast<double>(benchmark.size());
}

double interop(const Graph& g1, const Graph& g2, const NodeMapping& benchmark) {
  const std::size_t denominator = g1.edge_count() + g2.edge_count();
  if (denominator == 0) throw UndefinedMetric("interop of two edgeless graphs");
  if (benchmark.source_nodes() != g1.node_count() ||
      benchmark.target_nodes() != g2.node_count()) {
    throw DataError("benchmark does not match the graphs");
  }
  std::size_t correlations = 0;
  for (const auto& [u, v] : g1.edges()) {
    auto a = benchmark.target_of(u);
    auto b = benchmark.target_of(v);
    correlations += (a && b && g2.has_edge(*a, *b));
  }
  return 2.0 * static_cast<double>(correlations) /
         static_cast<double>(denominator);
}

double avg_class_length(const OrbitPartition& partition) {
  if (partition.class_count() == 0) {
    throw UndefinedMetric("average class length of an empty graph");
  }
  return static_cast<double>(partition.node_count()) /
         static_cast<double>(partition.class_count());
}

}  // namespace snac
