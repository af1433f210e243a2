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

// Synthetic inputs for alignment experiments. Every generator is a pure
// function of its arguments and a 64-bit seed (std::mt19937_64).

#ifndef SNAC_SYNTHESIS_HPP_
#define SNAC_SYNTHESIS_HPP_

#include <cstddef>
#include <cstdint>

#include "snac/automorphism.hpp"
#include "snac/graph.hpp"
#include "snac/metrics.hpp"

namespace snac {

struct GeneratorConfig {
  int n = 0;
  double p = 0.0;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument unless n >= 0 and 0 <= p <= 1.
  void validate() const;
};

// G(n, p): each of the n(n-1)/2 pairs independently. Labels are "0".."n-1".
Graph gilbert_graph(const GeneratorConfig& config);

// Disjoint union of `components` connected G(config.n, config.p) graphs
// drawn from `distinct` base graphs (resampled until connected), each copy
// randomly relabeled, so components i and j with i % distinct == j %
// distinct are isomorphic. Throws std::invalid_argument when p is too small
// to produce a connected base in a reasonable number of tries.
Graph gilbert_components(const GeneratorConfig& config, int components,
                         int distinct);

// Appends round(|V| * ratio) false twins: each step copies the neighbor set
// of a uniformly chosen existing node, earlier clones included. Throws
// DataError for a positive ratio on an empty graph.
Graph inject_twins(const Graph& g, double ratio, std::uint64_t seed);

struct ShuffledCopy {
  // Same topology as the input, node v renamed to perm[v]; labels travel
  // with the nodes.
  Graph target;
  NodeMapping benchmark;
  // Correct everywhere except on `shuffled` nodes, which are deranged.
  NodeMapping result;
  int shuffled = 0;
};

// Selects floor(ratio * |V|) nodes uniformly and deranges their images. A
// one-node selection has no derangement and is enlarged to two.
ShuffledCopy shuffle_labels(const Graph& g, double ratio, std::uint64_t seed);

// Drops every edge independently with probability p; nodes are kept.
Graph remove_edges(const Graph& g, double p, std::uint64_t seed);

struct SimulatedAlignerConfig {
  double x = 1.0;
  std::uint64_t seed = 1;
};

struct AlignerOutcome {
  NodeMapping mapping;
  // Sources that drew "recognized" but found their class already used up.
  std::size_t demoted = 0;
  // Sources that drew "missed" but found no unused target outside their
  // class and had to land inside it.
  std::size_t forced = 0;
};

// A model that places each benchmark source u inside the correct target
// class with probability x (uniformly among its members) and outside it
// otherwise. Outputs are kept one-to-one: recognized sources claim class
// members first, then missed sources draw from what is left outside their
// class. The demoted/forced counts measure the distortion this causes.
AlignerOutcome simulated_aligner(const OrbitPartition& source,
                                 const OrbitPartition& target,
                                 const NodeMapping& benchmark,
                                 const ClassMapping& ecm,
                                 const SimulatedAlignerConfig& config);

}  // namespace snac

#endif  // SNAC_SYNTHESIS_HPP_
