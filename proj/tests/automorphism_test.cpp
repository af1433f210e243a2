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

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "snac/error.hpp"
#include "test_util.hpp"

namespace snac {
namespace {

using testing::add_twin;
using testing::as_sets;
using testing::disjoint_union;
using testing::make_graph;
using testing::random_gnp;
using testing::random_permutation;
using testing::relabel;

using Classes = std::vector<std::vector<NodeId>>;

Graph star() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

Graph asymmetric6() {
  return make_graph(6, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}, {3, 5}});
}

TEST(OrbitPartitionTest, CanonicalForm) {
  const int keys[] = {7, 3, 7, 9};
  OrbitPartition p = OrbitPartition::from_keys(keys);
  EXPECT_EQ(p.classes, (Classes{{0, 2}, {1}, {3}}));
  EXPECT_EQ(p.class_of, (std::vector<int>{0, 1, 0, 2}));
}

TEST(OrbitsFromGeneratorsTest, Examples) {
  AutomorphismGeneratorSet identity{4, {{0, 1, 2, 3}}};
  EXPECT_EQ(orbits_from_generators(4, identity).class_count(), 4);

  AutomorphismGeneratorSet swap01{3, {{1, 0, 2}}};
  EXPECT_EQ(orbits_from_generators(3, swap01).classes, (Classes{{0, 1}, {2}}));

  AutomorphismGeneratorSet chain{5, {{1, 0, 2, 3, 4}, {0, 2, 1, 3, 4}}};
  EXPECT_EQ(orbits_from_generators(5, chain).classes,
            (Classes{{0, 1, 2}, {3}, {4}}));

  AutomorphismGeneratorSet broken{3, {{0, 0, 1}}};
  EXPECT_THROW(orbits_from_generators(3, broken), DataError);
}

TEST(BruteForceOrbitsTest, Examples) {
  EXPECT_EQ(brute_force_orbits(star()).classes, (Classes{{0}, {1, 2, 3}}));
  // Path a-b-c-d-e: center alone, two mirrored pairs.
  Graph p5 = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  EXPECT_EQ(brute_force_orbits(p5).classes, (Classes{{0, 4}, {1, 3}, {2}}));
  EXPECT_EQ(brute_force_orbits(make_graph(1, {})).classes, (Classes{{0}}));
  EXPECT_THROW(brute_force_orbits(make_graph(10, {})), DataError);
}

TEST(AutomorphismSearchTest, Star) {
  Graph g = star();
  AutomorphismGeneratorSet gens = automorphism_search(g);
  for (const auto& sigma : gens.generators) {
    EXPECT_TRUE(is_automorphism(g, sigma));
  }
  EXPECT_EQ(orbits_from_generators(4, gens), brute_force_orbits(g));
  EXPECT_EQ(orbits_from_generators(4, gens).classes,
            (Classes{{0}, {1, 2, 3}}));
}

TEST(AutomorphismSearchTest, FourCycleIsVertexTransitive) {
  Graph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_EQ(orbits_from_generators(4, automorphism_search(c4)).class_count(),
            1);
}

TEST(AutomorphismSearchTest, AsymmetricGraphHasOnlyIdentity) {
  Graph g = asymmetric6();
  ASSERT_EQ(brute_force_orbits(g).class_count(), 6);
  AutomorphismGeneratorSet gens = automorphism_search(g);
  ASSERT_EQ(gens.generators.size(), 1u);
  EXPECT_EQ(gens.generators[0], (Permutation{0, 1, 2, 3, 4, 5}));
}

TEST(AutomorphismSearchTest, EveryGeneratorIsAnAutomorphism) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 20 * (trial + 1);
    Graph g = random_gnp(n, 3.0 / n, rng);
    for (int t = 0; t < n / 10; ++t) g = add_twin(g, rng() % g.node_count());
    if (g.node_count() > 500) break;
    for (const auto& sigma : automorphism_search(g).generators) {
      ASSERT_TRUE(is_permutation(sigma, g.node_count()));
      // Explicit pair check, independent of is_automorphism.
      for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v = u + 1; v < g.node_count(); ++v) {
          ASSERT_EQ(g.has_edge(u, v), g.has_edge(sigma[u], sigma[v]));
        }
      }
    }
  }
}

TEST(IsomorphismMapTest, Examples) {
  Graph triangle = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  Graph path = make_graph(3, {{0, 1}, {1, 2}});
  auto map = isomorphism_map(triangle, triangle);
  ASSERT_TRUE(map.has_value());
  EXPECT_TRUE(is_isomorphism(triangle, triangle, *map));
  EXPECT_FALSE(isomorphism_map(triangle, path).has_value());
  EXPECT_TRUE(isomorphism_map(Graph(), Graph()).has_value());
}

TEST(IsomorphismMapTest, RecoversShuffledGilbertGraph) {
  std::mt19937_64 rng(8);
  Graph g = random_gnp(50, 0.1, rng);
  const auto shuffle = random_permutation(50, rng);
  Graph h = relabel(g, shuffle);
  auto map = isomorphism_map(g, h);
  ASSERT_TRUE(map.has_value());
  EXPECT_TRUE(is_isomorphism(g, h, *map));
  // Up to automorphism: shuffle^-1 o map is an automorphism of g.
  Permutation back(50);
  for (NodeId v = 0; v < 50; ++v) back[shuffle[v]] = v;
  Permutation composed(50);
  for (NodeId v = 0; v < 50; ++v) composed[v] = back[(*map)[v]];
  EXPECT_TRUE(is_automorphism(g, composed));
}

TEST(IsomorphismMapTest, RelationIsSymmetric) {
  std::mt19937_64 rng(99);
  int isomorphic = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 12;
    Graph a = random_gnp(n, 0.4, rng);
    Graph b = trial % 2 ? relabel(a, random_permutation(n, rng))
                        : random_gnp(n, 0.4, rng);
    const bool ab = isomorphism_map(a, b).has_value();
    const bool ba = isomorphism_map(b, a).has_value();
    ASSERT_EQ(ab, ba);
    isomorphic += ab;
    if (trial % 2) ASSERT_TRUE(ab);
  }
  EXPECT_GE(isomorphic, 50);
}

TEST(IsomorphismMapTest, DistinguishesCospectralRegularPair) {
  // C6 and two disjoint triangles: both 2-regular on 6 nodes.
  Graph c6 = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  Graph two = make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  EXPECT_FALSE(isomorphism_map(c6, two).has_value());
  EXPECT_FALSE(isomorphism_map(two, c6).has_value());
}

TEST(FindSymmetricNodesTest, TwoTrianglesFormOneClass) {
  Graph g = make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  ASSERT_EQ(brute_force_orbits(g).class_count(), 1);
  EXPECT_EQ(find_symmetric_nodes(g).classes, (Classes{{0, 1, 2, 3, 4, 5}}));
}

TEST(FindSymmetricNodesTest, ConnectedGraphEqualsDirectSearch) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_gnp(30, 0.15, rng);
    for (int t = 0; t < 5; ++t) g = add_twin(g, rng() % 30);
    if (connected_components(g).size() != 1) continue;
    EXPECT_EQ(find_symmetric_nodes(g),
              orbits_from_generators(g.node_count(), automorphism_search(g)));
  }
}

TEST(FindSymmetricNodesTest, KarateClub) {
  Graph g = read_edge_list(testing::data_path("karate.txt"));
  OrbitPartition orbits = find_symmetric_nodes(g);
  EXPECT_EQ(orbits.node_count(), 34);
  EXPECT_EQ(orbits.class_count(), 27);
  EXPECT_EQ(orbits, find_symmetric_nodes(g, {.decompose = false}));
}

TEST(FindSymmetricNodesTest, MatchesBruteForceOnSmallGraphs) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + trial % 7;
    Graph g = random_gnp(n, 0.5, rng);
    ASSERT_EQ(find_symmetric_nodes(g), brute_force_orbits(g)) << trial;
  }
}

TEST(FindSymmetricNodesTest, DecompositionIsSound) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g;
    if (trial % 2 == 0) {
      // Small enough for the brute-force oracle.
      const int a = 1 + trial % 4;
      Graph first = random_gnp(a, 0.6, rng);
      Graph second = trial % 4 == 0
                         ? relabel(first, random_permutation(a, rng))
                         : random_gnp(1 + (trial / 2) % (9 - a), 0.6, rng);
      g = disjoint_union(first, second);
      ASSERT_LE(g.node_count(), 9);
      ASSERT_EQ(find_symmetric_nodes(g), brute_force_orbits(g)) << trial;
    } else {
      // Several copies of a few base graphs, total n <= 200.
      std::vector<Graph> bases = {random_gnp(10, 0.3, rng),
                                  random_gnp(12, 0.25, rng),
                                  random_gnp(8, 0.4, rng)};
      g = Graph();
      while (g.node_count() < 150) {
        const Graph& base = bases[rng() % bases.size()];
        g = disjoint_union(
            g, relabel(base, random_permutation(base.node_count(), rng)));
      }
      ASSERT_EQ(find_symmetric_nodes(g),
                find_symmetric_nodes(g, {.decompose = false}))
          << trial;
    }
  }
}

TEST(FindSymmetricNodesTest, TwinsShareAClass) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const bool small = trial < 30;
    const int n = small ? 2 + trial % 6 : 30 + trial * 3;
    Graph g = random_gnp(n, small ? 0.5 : 0.1, rng);
    const NodeId v = static_cast<NodeId>(rng() % n);
    Graph with_twin = add_twin(g, v);
    const NodeId twin = n;
    OrbitPartition orbits = small ? brute_force_orbits(with_twin)
                                  : find_symmetric_nodes(with_twin);
    ASSERT_EQ(orbits.class_of[v], orbits.class_of[twin]);
    if (small) ASSERT_EQ(find_symmetric_nodes(with_twin), orbits);
  }
}

TEST(FindSymmetricNodesTest, ParallelWorkersGiveIdenticalResult) {
  std::mt19937_64 rng(5);
  Graph g;
  for (int c = 0; c < 12; ++c) {
    Graph part = random_gnp(15, 0.25, rng);
    part = add_twin(part, 0);
    g = disjoint_union(g, part);
  }
  EXPECT_EQ(find_symmetric_nodes(g, {.workers = 1}),
            find_symmetric_nodes(g, {.workers = 4}));
}

TEST(GroupIsomorphicComponentsTest, LandmarksAndVerifiedMaps) {
  std::mt19937_64 rng(31);
  Graph base = random_gnp(9, 0.4, rng);
  Graph other = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  Graph g = disjoint_union(
      disjoint_union(other, relabel(base, random_permutation(9, rng))),
      disjoint_union(base, relabel(base, random_permutation(9, rng))));
  ComponentDecomposition cc = connected_components(g);
  IsomorphismGrouping grouping = group_isomorphic_components(g, cc);
  std::set<int> seen;
  for (const auto& group : grouping.groups) {
    Subgraph landmark = induced_subgraph(g, cc.components[group.landmark]);
    for (std::size_t k = 0; k < group.members.size(); ++k) {
      ASSERT_TRUE(seen.insert(group.members[k]).second);
      Subgraph member = induced_subgraph(g, cc.components[group.members[k]]);
      EXPECT_TRUE(
          is_isomorphism(member.graph, landmark.graph, group.member_maps[k]));
    }
    // Landmark is the member with the smallest first node.
    for (int m : group.members) {
      EXPECT_LE(cc.components[group.landmark].front(),
                cc.components[m].front());
    }
  }
  EXPECT_EQ(seen.size(), cc.size());
  // Different groups are non-isomorphic.
  for (std::size_t a = 0; a < grouping.groups.size(); ++a) {
    for (std::size_t b = a + 1; b < grouping.groups.size(); ++b) {
      EXPECT_FALSE(
          isomorphism_map(
              induced_subgraph(g, cc.components[grouping.groups[a].landmark])
                  .graph,
              induced_subgraph(g, cc.components[grouping.groups[b].landmark])
                  .graph)
              .has_value());
    }
  }
}

}  // namespace
}  // namespace snac
