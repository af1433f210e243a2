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

#include "snac/automorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "snac/error.hpp"
#include "snac/parallel.hpp"
#include "snac/partition.hpp"

namespace snac {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::vector<int> roots() {
    std::vector<int> out(parent_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = find(static_cast<int>(i));
    }
    return out;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

// One node of the first path through the search tree.
struct Level {
  OrderedPartition partition;  // equitable, after refinement
  std::uint64_t trace = 0;
  int cells = 0;
  int target = -1;  // target cell start; -1 at the leaf
  NodeId chosen = -1;
};

// The leftmost root-to-leaf path: at every level the smallest node of the
// target cell is individualized.
//
// TODO: replay individualizations from the root instead of storing one
// partition per level; memory is O(depth * n), which matters only for
// graphs with thousands of nontrivial levels.
struct ReferencePath {
  std::vector<Level> levels;
  std::vector<NodeId> leaf;
};

ReferencePath build_reference_path(OrderedPartition root,
                                   std::uint64_t root_trace,
                                   Refiner& refiner) {
  ReferencePath path;
  Level level;
  level.partition = std::move(root);
  level.trace = root_trace;
  level.cells = level.partition.cell_count();
  for (;;) {
    level.target = level.partition.target_cell();
    if (level.target < 0) break;
    auto cell = level.partition.cell(level.target);
    level.chosen = *std::min_element(cell.begin(), cell.end());
    Level next;
    next.partition = level.partition;
    const int single = next.partition.individualize(level.chosen);
    const int splitters[] = {single};
    next.trace = refiner.refine(next.partition, splitters);
    next.cells = next.partition.cell_count();
    path.levels.push_back(std::move(level));
    level = std::move(next);
  }
  auto leaf = level.partition.elements();
  path.leaf.assign(leaf.begin(), leaf.end());
  path.levels.push_back(std::move(level));
  return path;
}

// Depth-first search of `graph`'s search tree for a leaf whose labelling,
// aligned position by position with the reference leaf, is an isomorphism
// from the reference graph. Subtrees whose refinement trace, cell count or
// target cell differ from the reference path at the same depth are pruned;
// for equivariant refinement those can contain no such leaf.
class LeafMatcher {
 public:
  LeafMatcher(const Graph& reference_graph, const ReferencePath& reference,
              const Graph& graph, Refiner& refiner)
      : reference_graph_(reference_graph),
        reference_(reference),
        graph_(graph),
        refiner_(refiner) {}

  std::optional<Permutation> explore(const OrderedPartition& parent, NodeId w,
                                     int depth) {
    if (depth >= static_cast<int>(reference_.levels.size())) {
      return std::nullopt;
    }
    const Level& want = reference_.levels[depth];
    OrderedPartition p = parent;
    const int single = p.individualize(w);
    const int splitters[] = {single};
    const std::uint64_t trace = refiner_.refine(p, splitters);
    if (trace != want.trace || p.cell_count() != want.cells) {
      return std::nullopt;
    }
    return descend(p, depth);
  }

  // `p` is a validated node at `depth`.
  std::optional<Permutation> descend(const OrderedPartition& p, int depth) {
    const Level& want = reference_.levels[depth];
    if (p.discrete()) {
      Permutation map(p.node_count());
      auto leaf = p.elements();
      for (std::size_t k = 0; k < leaf.size(); ++k) {
        map[reference_.leaf[k]] = leaf[k];
      }
      if (is_isomorphism(reference_graph_, graph_, map)) return map;
      return std::nullopt;
    }
    const int target = p.target_cell();
    if (target != want.target ||
        p.cell_end(target) != want.partition.cell_end(want.target)) {
      return std::nullopt;
    }
    auto span = p.cell(target);
    std::vector<NodeId> candidates(span.begin(), span.end());
    std::sort(candidates.begin(), candidates.end());
    for (NodeId u : candidates) {
      if (auto found = explore(p, u, depth + 1)) return found;
    }
    return std::nullopt;
  }

 private:
  const Graph& reference_graph_;
  const ReferencePath& reference_;
  const Graph& graph_;
  Refiner& refiner_;
};

// Label-invariant summary used to reject non-isomorphic pairs cheaply.
struct Signature {
  int nodes = 0;
  std::size_t edges = 0;
  std::uint64_t root_trace = 0;
  int root_cells = 0;
  std::vector<int> degrees;  // sorted

  auto key() const { return std::tie(nodes, edges, root_trace, root_cells); }
  bool operator==(const Signature& o) const {
    return key() == o.key() && degrees == o.degrees;
  }
};

struct RootedGraph {
  const Graph* graph = nullptr;
  OrderedPartition root;
  Signature signature;
};

RootedGraph make_rooted(const Graph& g, Refiner& refiner) {
  RootedGraph rg;
  rg.graph = &g;
  rg.root = OrderedPartition(g.node_count());
  rg.signature.nodes = g.node_count();
  rg.signature.edges = g.edge_count();
  rg.signature.root_trace = refiner.refine_all(rg.root);
  rg.signature.root_cells = rg.root.cell_count();
  rg.signature.degrees.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    rg.signature.degrees[v] = g.degree(v);
  }
  std::sort(rg.signature.degrees.begin(), rg.signature.degrees.end());
  return rg;
}

Permutation invert(std::span<const NodeId> p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<NodeId>(i);
  return inv;
}

AutomorphismGeneratorSet search_from_root(const Graph& g, Refiner& refiner,
                                          OrderedPartition root,
                                          std::uint64_t root_trace) {
  const int n = g.node_count();
  AutomorphismGeneratorSet result;
  result.node_count = n;
  ReferencePath path = build_reference_path(std::move(root), root_trace,
                                            refiner);
  LeafMatcher matcher(g, path, g, refiner);
  UnionFind orbits(n);

  // Bottom-up over the first path. Every generator found so far fixes the
  // current prefix pointwise, so the union-find orbits are orbits of the
  // prefix stabilizer and any child in the orbit of an explored child adds
  // nothing new.
  for (int depth = static_cast<int>(path.levels.size()) - 2; depth >= 0;
       --depth) {
    const Level& level = path.levels[depth];
    auto span = level.partition.cell(level.target);
    std::vector<NodeId> cell(span.begin(), span.end());
    std::sort(cell.begin(), cell.end());
    std::vector<NodeId> explored = {level.chosen};
    for (NodeId w : cell) {
      if (w == level.chosen) continue;
      const int root_w = orbits.find(w);
      bool known = false;
      for (NodeId e : explored) {
        if (orbits.find(e) == root_w) {
          known = true;
          break;
        }
      }
      if (known) continue;
      if (auto sigma = matcher.explore(level.partition, w, depth + 1)) {
        for (NodeId v = 0; v < n; ++v) orbits.unite(v, (*sigma)[v]);
        result.generators.push_back(std::move(*sigma));
      }
      explored.push_back(w);
    }
  }
  if (result.generators.empty()) {
    Permutation identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    result.generators.push_back(std::move(identity));
  }
  return result;
}

// Connected components with their subgraphs and invariants.
struct ComponentIndex {
  std::vector<Subgraph> subgraphs;
  std::vector<Refiner> refiners;
  std::vector<RootedGraph> rooted;
  std::vector<int> order;  // largest first, ties by smallest member
};

ComponentIndex index_components(const Graph& g,
                                const ComponentDecomposition& components) {
  ComponentIndex index;
  const std::size_t count = components.size();
  index.subgraphs.reserve(count);
  for (const auto& members : components.components) {
    index.subgraphs.push_back(induced_subgraph(g, members));
  }
  index.refiners.reserve(count);
  index.rooted.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    index.refiners.emplace_back(index.subgraphs[c].graph);
    index.rooted.push_back(
        make_rooted(index.subgraphs[c].graph, index.refiners[c]));
  }
  index.order.resize(count);
  std::iota(index.order.begin(), index.order.end(), 0);
  std::stable_sort(index.order.begin(), index.order.end(), [&](int a, int b) {
    return components.components[a].size() > components.components[b].size();
  });
  return index;
}

IsomorphismGrouping group_components(ComponentIndex& index) {
  IsomorphismGrouping grouping;
  std::vector<ReferencePath> landmark_paths;
  // Groups keyed by the cheap part of the signature; the degree sequence is
  // compared within the bucket.
  std::map<std::tuple<int, std::size_t, std::uint64_t, int>, std::vector<int>>
      buckets;
  for (int c : index.order) {
    const RootedGraph& rc = index.rooted[c];
    auto& bucket = buckets[rc.signature.key()];
    bool placed = false;
    for (int gi : bucket) {
      IsomorphismGroup& group = grouping.groups[gi];
      const RootedGraph& rl = index.rooted[group.landmark];
      if (!(rl.signature == rc.signature)) continue;
      LeafMatcher matcher(*rl.graph, landmark_paths[gi], *rc.graph,
                          index.refiners[c]);
      if (auto map = matcher.descend(rc.root, 0)) {
        group.members.push_back(c);
        group.member_maps.push_back(invert(*map));
        placed = true;
        break;
      }
    }
    if (placed) continue;
    const int gi = static_cast<int>(grouping.groups.size());
    IsomorphismGroup& group = grouping.groups.emplace_back();
    group.landmark = c;
    group.members.push_back(c);
    Permutation identity(rc.graph->node_count());
    std::iota(identity.begin(), identity.end(), 0);
    group.member_maps.push_back(std::move(identity));
    landmark_paths.push_back(build_reference_path(
        rc.root, rc.signature.root_trace, index.refiners[c]));
    bucket.push_back(gi);
  }
  return grouping;
}

}  // namespace

OrbitPartition OrbitPartition::from_keys(std::span<const int> keys) {
  OrbitPartition out;
  out.class_of.resize(keys.size());
  std::unordered_map<int, int> class_of_key;
  for (std::size_t v = 0; v < keys.size(); ++v) {
    auto [it, inserted] =
        class_of_key.emplace(keys[v], static_cast<int>(out.classes.size()));
    if (inserted) out.classes.emplace_back();
    out.class_of[v] = it->second;
    out.classes[it->second].push_back(static_cast<NodeId>(v));
  }
  return out;
}

OrbitPartition OrbitPartition::singletons(int n) {
  std::vector<int> keys(n);
  std::iota(keys.begin(), keys.end(), 0);
  return from_keys(keys);
}

bool is_permutation(std::span<const NodeId> p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (NodeId x : p) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

bool is_isomorphism(const Graph& g1, const Graph& g2,
                    std::span<const NodeId> map) {
  if (g1.node_count() != g2.node_count() ||
      g1.edge_count() != g2.edge_count() ||
      !is_permutation(map, g1.node_count())) {
    return false;
  }
  // Injective on nodes and equal edge counts: mapping every edge onto an
  // edge makes the edge map a bijection too.
  for (NodeId u = 0; u < g1.node_count(); ++u) {
    for (NodeId v : g1.neighbors(u)) {
      if (u < v && !g2.has_edge(map[u], map[v])) return false;
    }
  }
  return true;
}

bool is_automorphism(const Graph& g, std::span<const NodeId> p) {
  return is_isomorphism(g, g, p);
}

AutomorphismGeneratorSet automorphism_search(const Graph& g) {
  if (g.node_count() == 0) return {};
  Refiner refiner(g);
  OrderedPartition root(g.node_count());
  const std::uint64_t trace = refiner.refine_all(root);
  return search_from_root(g, refiner, std::move(root), trace);
}

OrbitPartition orbits_from_generators(int n,
                                      const AutomorphismGeneratorSet& gens) {
  UnionFind uf(n);
  for (const Permutation& sigma : gens.generators) {
    if (!is_permutation(sigma, n)) {
      throw DataError("generator is not a permutation of the node set");
    }
    for (NodeId v = 0; v < n; ++v) uf.unite(v, sigma[v]);
  }
  return OrbitPartition::from_keys(uf.roots());
}

std::optional<Permutation> isomorphism_map(const Graph& g1, const Graph& g2) {
  if (g1.node_count() != g2.node_count() ||
      g1.edge_count() != g2.edge_count()) {
    return std::nullopt;
  }
  if (g1.node_count() == 0) return Permutation{};
  Refiner r1(g1);
  Refiner r2(g2);
  RootedGraph a = make_rooted(g1, r1);
  RootedGraph b = make_rooted(g2, r2);
  if (!(a.signature == b.signature)) return std::nullopt;
  ReferencePath path =
      build_reference_path(a.root, a.signature.root_trace, r1);
  LeafMatcher matcher(g1, path, g2, r2);
  return matcher.descend(b.root, 0);
}

IsomorphismGrouping group_isomorphic_components(
    const Graph& g, const ComponentDecomposition& components) {
  ComponentIndex index = index_components(g, components);
  return group_components(index);
}

OrbitPartition find_symmetric_nodes(const Graph& g,
                                    const SymmetryOptions& options) {
  const int n = g.node_count();
  if (!options.decompose) {
    return orbits_from_generators(n, automorphism_search(g));
  }
  const ComponentDecomposition components = connected_components(g);
  ComponentIndex index = index_components(g, components);
  const IsomorphismGrouping grouping = group_components(index);

  UnionFind classes(n);
  // Across components: member node ~ its image in the landmark.
  for (const IsomorphismGroup& group : grouping.groups) {
    const auto& landmark = index.subgraphs[group.landmark].to_parent;
    for (std::size_t k = 0; k < group.members.size(); ++k) {
      const auto& member = index.subgraphs[group.members[k]].to_parent;
      const Permutation& map = group.member_maps[k];
      for (std::size_t i = 0; i < map.size(); ++i) {
        classes.unite(member[i], landmark[map[i]]);
      }
    }
  }

  // Within landmarks. Searches are independent; the merge below runs in
  // group order so the result never depends on scheduling.
  std::vector<AutomorphismGeneratorSet> found(grouping.groups.size());
  parallel_for(grouping.groups.size(), options.workers, [&](std::size_t gi) {
    const int c = grouping.groups[gi].landmark;
    Refiner refiner(index.subgraphs[c].graph);
    const RootedGraph& rooted = index.rooted[c];
    found[gi] = search_from_root(index.subgraphs[c].graph, refiner,
                                 rooted.root, rooted.signature.root_trace);
  });
  for (std::size_t gi = 0; gi < grouping.groups.size(); ++gi) {
    const auto& landmark =
        index.subgraphs[grouping.groups[gi].landmark].to_parent;
    for (const Permutation& sigma : found[gi].generators) {
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        classes.unite(landmark[i], landmark[sigma[i]]);
      }
    }
  }
  return OrbitPartition::from_keys(classes.roots());
}

OrbitPartition brute_force_orbits(const Graph& g) {
  const int n = g.node_count();
  if (n > kBruteForceMaxNodes) {
    throw DataError("brute_force_orbits: graph too large for enumeration");
  }
  std::vector<char> adjacent(static_cast<std::size_t>(n) * n, 0);
  for (const auto& [u, v] : g.edges()) {
    adjacent[u * n + v] = adjacent[v * n + u] = 1;
  }
  UnionFind uf(n);
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool preserves = true;
    for (int u = 0; u < n && preserves; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (adjacent[u * n + v] != adjacent[p[u] * n + p[v]]) {
          preserves = false;
          break;
        }
      }
    }
    if (preserves) {
      for (int v = 0; v < n; ++v) uf.unite(v, p[v]);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return OrbitPartition::from_keys(uf.roots());
}

}  // namespace snac
