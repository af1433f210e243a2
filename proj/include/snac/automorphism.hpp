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

// Symmetric nodes: orbits of the automorphism group of an undirected graph.
//
// Two nodes are symmetric when some automorphism maps one onto the other.
// The orbit partition is computed exactly, either by a single
// individualization-refinement search on the whole graph or by decomposing
// the graph into connected components first: isomorphic components are
// grouped against one landmark per group, cross-component pairs come from
// the landmark isomorphisms, and only landmarks are searched for
// automorphisms.

#ifndef SNAC_AUTOMORPHISM_HPP_
#define SNAC_AUTOMORPHISM_HPP_

#include <optional>
#include <span>
#include <vector>

#include "snac/graph.hpp"

namespace snac {

using Permutation = std::vector<NodeId>;

// Partition of the node set into symmetry classes. Classes are sorted
// ascending and ordered by their smallest member, so two OrbitPartitions of
// the same node set compare equal exactly when they describe the same
// relation.
struct OrbitPartition {
  std::vector<int> class_of;
  std::vector<std::vector<NodeId>> classes;

  // Builds the canonical form from any per-node class key.
  static OrbitPartition from_keys(std::span<const int> keys);
  static OrbitPartition singletons(int n);

  int node_count() const { return static_cast<int>(class_of.size()); }
  int class_count() const { return static_cast<int>(classes.size()); }
  const std::vector<NodeId>& class_members(NodeId v) const {
    return classes[class_of[v]];
  }
  bool operator==(const OrbitPartition&) const = default;
};

struct AutomorphismGeneratorSet {
  int node_count = 0;
  std::vector<Permutation> generators;
};

// Per isomorphism class of components: the landmark component and, for every
// member, the node bijection member -> landmark in component-local indices
// (positions within ComponentDecomposition::components).
struct IsomorphismGroup {
  int landmark = 0;
  std::vector<int> members;  // includes the landmark, which maps to itself
  std::vector<Permutation> member_maps;
};

struct IsomorphismGrouping {
  std::vector<IsomorphismGroup> groups;
};

bool is_permutation(std::span<const NodeId> p, int n);
// (u,v) in E <=> (p(u),p(v)) in E.
bool is_automorphism(const Graph& g, std::span<const NodeId> p);
// Edge-preserving bijection from g1 onto g2.
bool is_isomorphism(const Graph& g1, const Graph& g2,
                    std::span<const NodeId> map);

// Generators of Aut(g) found by individualization-refinement with
// orbit pruning. Exact: the orbits of the returned group are the orbits of
// Aut(g). An asymmetric graph yields the identity as its only generator.
AutomorphismGeneratorSet automorphism_search(const Graph& g);

// Union-find closure of all (v, sigma(v)) pairs. Throws DataError if some
// generator is not a permutation of [0, n).
OrbitPartition orbits_from_generators(int n,
                                      const AutomorphismGeneratorSet& gens);

// An isomorphism g1 -> g2 (result[v] is the image of v), or nullopt.
std::optional<Permutation> isomorphism_map(const Graph& g1, const Graph& g2);

// Groups `components` into isomorphism classes. Components are visited
// largest first (ties by smallest member) and each is tested only against
// the landmark of every existing group.
IsomorphismGrouping group_isomorphic_components(
    const Graph& g, const ComponentDecomposition& components);

struct SymmetryOptions {
  // false: one search over the whole graph, for timing comparisons.
  bool decompose = true;
  // Landmark searches run on up to this many threads; 0 picks the default
  // worker count.
  int workers = 1;
};

// Orbit partition of the whole graph.
OrbitPartition find_symmetric_nodes(const Graph& g,
                                    const SymmetryOptions& options = {});

// Ground truth by enumerating all n! permutations. Throws DataError above
// kBruteForceMaxNodes.
inline constexpr int kBruteForceMaxNodes = 9;
OrbitPartition brute_force_orbits(const Graph& g);

}  // namespace snac

#endif  // SNAC_AUTOMORPHISM_HPP_
