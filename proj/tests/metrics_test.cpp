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

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "snac/error.hpp"
#include "test_util.hpp"

namespace snac {
namespace {

using testing::make_graph;
using testing::random_gnp;
using testing::random_permutation;
using testing::relabel;

NodeMapping from_permutation(const std::vector<NodeId>& perm,
                             MappingRole role = MappingRole::kResult) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId v = 0; v < static_cast<NodeId>(perm.size()); ++v) {
    pairs.emplace_back(v, perm[v]);
  }
  const int n = static_cast<int>(perm.size());
  return NodeMapping(std::move(pairs), role, n, n);
}

std::vector<NodeId> identity(int n) {
  std::vector<NodeId> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Graph star() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

TEST(NodeMappingTest, RejectsNonInjectiveAndOutOfRange) {
  using P = std::vector<std::pair<NodeId, NodeId>>;
  EXPECT_THROW(NodeMapping(P{{0, 1}, {1, 1}}, MappingRole::kResult, 2, 2),
               DataError);
  EXPECT_THROW(NodeMapping(P{{0, 0}, {0, 1}}, MappingRole::kResult, 2, 2),
               DataError);
  EXPECT_THROW(NodeMapping(P{{0, 2}}, MappingRole::kResult, 2, 2), DataError);
  NodeMapping m(P{{1, 0}}, MappingRole::kBenchmark, 2, 3);
  EXPECT_EQ(m.target_of(1), 0);
  EXPECT_FALSE(m.target_of(0));
}

TEST(RankedCandidatesTest, Validation) {
  using L = std::vector<std::pair<NodeId, std::vector<NodeId>>>;
  EXPECT_THROW(RankedCandidates(L{{0, {1, 1}}}, 2, 2), DataError);
  EXPECT_THROW(RankedCandidates(L{{0, {1}}, {0, {0}}}, 2, 2), DataError);
  EXPECT_THROW(RankedCandidates(L{{0, {5}}}, 2, 2), DataError);
  RankedCandidates c(L{{1, {1, 0}}}, 2, 2);
  EXPECT_EQ(c.rank(1, 0), 2);
  EXPECT_FALSE(c.rank(0, 0));
}

TEST(ComputeEcmTest, IdentityCopyTalliesClassSizes) {
  Graph g = star();
  OrbitPartition q = brute_force_orbits(g);
  ClassMapping ecm = compute_ecm(q, q, from_permutation(identity(4)));
  for (int c = 0; c < q.class_count(); ++c) {
    EXPECT_EQ(ecm.target_class[c], c);
    EXPECT_EQ(ecm.tally(c, c), static_cast<int>(q.classes[c].size()));
  }
}

TEST(ComputeEcmTest, MajorityWins) {
  // Source class {0,1,2}; target classes X = {0,1}, Y = {2}.
  const int source_keys[] = {0, 0, 0};
  const int target_keys[] = {5, 5, 9};
  OrbitPartition q = OrbitPartition::from_keys(source_keys);
  OrbitPartition p = OrbitPartition::from_keys(target_keys);
  ClassMapping ecm = compute_ecm(q, p, from_permutation({0, 1, 2}));
  EXPECT_EQ(ecm.target_class[0], p.class_of[0]);
  EXPECT_EQ(ecm.tally(0, p.class_of[0]), 2);
  EXPECT_EQ(ecm.tally(0, p.class_of[2]), 1);
  EXPECT_EQ(ecm.total_votes(0), 3);
}

TEST(ComputeEcmTest, TieGoesToSmallestClass) {
  const int source_keys[] = {0, 0};
  const int target_keys[] = {1, 2};
  OrbitPartition q = OrbitPartition::from_keys(source_keys);
  OrbitPartition p = OrbitPartition::from_keys(target_keys);
  EXPECT_EQ(compute_ecm(q, p, from_permutation({1, 0})).target_class[0], 0);
  EXPECT_EQ(compute_ecm(q, p, from_permutation({0, 1})).target_class[0], 0);
}

TEST(ComputeEcmTest, UntouchedClassIsUnmapped) {
  Graph g = star();
  OrbitPartition q = brute_force_orbits(g);
  NodeMapping centre_only({{0, 0}}, MappingRole::kBenchmark, 4, 4);
  ClassMapping ecm = compute_ecm(q, q, centre_only);
  EXPECT_TRUE(ecm.mapped(q.class_of[0]));
  EXPECT_FALSE(ecm.mapped(q.class_of[1]));
  NodeMapping result({{0, 0}, {1, 1}}, MappingRole::kResult, 4, 4);
  SnacResult r = snac_detailed(result, ecm, q, q);
  EXPECT_EQ(r.unmapped, 1u);
  EXPECT_EQ(r.pairs, 2u);
  EXPECT_DOUBLE_EQ(r.score, 0.5);
}

TEST(ComputeEcmTest, Errors) {
  OrbitPartition q = OrbitPartition::singletons(2);
  EXPECT_THROW(compute_ecm(q, q, NodeMapping({}, MappingRole::kBenchmark, 2, 2)),
               UndefinedMetric);
  EXPECT_THROW(compute_ecm(q, OrbitPartition::singletons(3),
                           from_permutation({0, 1})),
               DataError);
}

TEST(ComputeEcmTest, IndependentOfPairOrder) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 12 + trial;
    Graph g = random_gnp(n, 0.15, rng);
    for (int t = 0; t < 3; ++t) g = testing::add_twin(g, rng() % g.node_count());
    const int m = g.node_count();
    OrbitPartition q = find_symmetric_nodes(g);
    auto perm = random_permutation(m, rng);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId v = 0; v < m; ++v) pairs.emplace_back(v, perm[v]);
    ClassMapping a = compute_ecm(q, q, NodeMapping(pairs, MappingRole::kBenchmark, m, m));
    std::shuffle(pairs.begin(), pairs.end(), rng);
    ClassMapping b = compute_ecm(q, q, NodeMapping(pairs, MappingRole::kBenchmark, m, m));
    ASSERT_EQ(a.target_class, b.target_class);
    ASSERT_EQ(a.votes, b.votes);
  }
}

TEST(SnacTest, StarCopyWithSwappedLeaves) {
  Graph g = star();
  OrbitPartition q = brute_force_orbits(g);
  NodeMapping benchmark = from_permutation(identity(4), MappingRole::kBenchmark);
  NodeMapping swapped = from_permutation({0, 2, 1, 3});
  ClassMapping ecm = compute_ecm(q, q, benchmark);
  EXPECT_DOUBLE_EQ(snac(swapped, ecm, q, q), 1.0);
  EXPECT_DOUBLE_EQ(accuracy(swapped, benchmark), 0.5);
  EXPECT_DOUBLE_EQ(snac(benchmark, ecm, q, q), 1.0);
}

TEST(SnacTest, EveryPairInWrongClass) {
  const int keys[] = {0, 1};
  OrbitPartition q = OrbitPartition::from_keys(keys);
  ClassMapping ecm = compute_ecm(q, q, from_permutation({0, 1}));
  EXPECT_DOUBLE_EQ(snac(from_permutation({1, 0}), ecm, q, q), 0.0);
}

TEST(SnacTest, EmptyResultIsUndefined) {
  OrbitPartition q = OrbitPartition::singletons(2);
  ClassMapping ecm = compute_ecm(q, q, from_permutation({0, 1}));
  EXPECT_THROW(snac(NodeMapping({}, MappingRole::kResult, 2, 2), ecm, q, q),
               UndefinedMetric);
}

TEST(SnacTest, WeightedModeGivesFractionalCredit) {
  const int source_keys[] = {0, 0, 0};
  const int target_keys[] = {5, 5, 9};
  OrbitPartition q = OrbitPartition::from_keys(source_keys);
  OrbitPartition p = OrbitPartition::from_keys(target_keys);
  ClassMapping ecm = compute_ecm(q, p, from_permutation({0, 1, 2}));
  NodeMapping into_minority({{0, 2}}, MappingRole::kResult, 3, 3);
  EXPECT_DOUBLE_EQ(snac(into_minority, ecm, q, p), 0.0);
  EXPECT_DOUBLE_EQ(snac(into_minority, ecm, q, p, {.weighted_ecm = true}),
                   1.0 / 3.0);
  NodeMapping into_majority({{0, 1}}, MappingRole::kResult, 3, 3);
  EXPECT_DOUBLE_EQ(snac(into_majority, ecm, q, p, {.weighted_ecm = true}),
                   2.0 / 3.0);
}

TEST(AccuracyTest, Examples) {
  NodeMapping benchmark = from_permutation(identity(4), MappingRole::kBenchmark);
  EXPECT_DOUBLE_EQ(accuracy(benchmark, benchmark), 1.0);
  EXPECT_DOUBLE_EQ(accuracy(from_permutation({1, 0, 2, 3}), benchmark), 0.5);
  EXPECT_DOUBLE_EQ(accuracy(from_permutation({1, 2, 3, 0}), benchmark), 0.0);
}

TEST(AccuracyTest, Errors) {
  NodeMapping benchmark = from_permutation(identity(3), MappingRole::kBenchmark);
  NodeMapping partial({{0, 0}, {1, 1}}, MappingRole::kResult, 3, 3);
  NodeMapping other({{0, 0}, {1, 1}, {2, 2}}, MappingRole::kResult, 3, 3);
  NodeMapping shifted({{0, 0}, {2, 1}}, MappingRole::kResult, 3, 3);
  NodeMapping bench2({{0, 0}, {1, 1}}, MappingRole::kBenchmark, 3, 3);
  EXPECT_THROW(accuracy(partial, benchmark), DataError);
  EXPECT_THROW(accuracy(shifted, bench2), DataError);
  EXPECT_THROW(accuracy(NodeMapping({}, MappingRole::kResult, 3, 3), benchmark),
               UndefinedMetric);
  EXPECT_DOUBLE_EQ(accuracy(other, benchmark), 1.0);
}

using Lists = std::vector<std::pair<NodeId, std::vector<NodeId>>>;

TEST(PrecisionAtKTest, Examples) {
  NodeMapping benchmark({{0, 3}}, MappingRole::kBenchmark, 1, 6);
  RankedCandidates at_three(Lists{{0, {5, 4, 3, 2}}}, 1, 6);
  EXPECT_DOUBLE_EQ(precision_at_k(at_three, benchmark, 5), 1.0);
  EXPECT_DOUBLE_EQ(precision_at_k(at_three, benchmark, 2), 0.0);
  RankedCandidates absent(Lists{{0, {5, 4}}}, 1, 6);
  for (int k = 1; k < 6; ++k) {
    EXPECT_DOUBLE_EQ(precision_at_k(absent, benchmark, k), 0.0);
  }
  EXPECT_THROW(precision_at_k(absent, benchmark, 0), std::invalid_argument);
}

TEST(MapScoreTest, Examples) {
  NodeMapping three = from_permutation({0, 1, 2}, MappingRole::kBenchmark);
  EXPECT_DOUBLE_EQ(
      map_score(RankedCandidates(Lists{{0, {0}}, {1, {1}}, {2, {2, 0}}}, 3, 3),
                three),
      1.0);
  NodeMapping one({{0, 1}}, MappingRole::kBenchmark, 1, 2);
  EXPECT_DOUBLE_EQ(map_score(RankedCandidates(Lists{{0, {0, 1}}}, 1, 2), one),
                   0.5);
  NodeMapping two = from_permutation({0, 1}, MappingRole::kBenchmark);
  EXPECT_DOUBLE_EQ(
      map_score(RankedCandidates(Lists{{0, {0}}, {1, {0}}}, 2, 2), two), 0.5);
  EXPECT_THROW(map_score(RankedCandidates(), NodeMapping()), UndefinedMetric);
}

TEST(InteropTest, Examples) {
  Graph path = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  // Shares 0-1 and 1-2 with the path, misses 2-3 and 3-4.
  Graph other = make_graph(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 4}, {2, 4}});
  NodeMapping id = from_permutation(identity(5), MappingRole::kBenchmark);
  EXPECT_DOUBLE_EQ(interop(path, other, id), 0.4);
  EXPECT_DOUBLE_EQ(interop(path, path, id), 1.0);
  Graph disjoint = make_graph(5, {{0, 2}, {1, 3}});
  EXPECT_DOUBLE_EQ(interop(path, disjoint, id), 0.0);
  EXPECT_THROW(interop(Graph(5, {}), Graph(5, {}), id), UndefinedMetric);
}

TEST(AvgClassLengthTest, Examples) {
  Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_DOUBLE_EQ(avg_class_length(find_symmetric_nodes(k4)), 4.0);
  EXPECT_DOUBLE_EQ(avg_class_length(OrbitPartition::singletons(7)), 1.0);
  Graph karate = read_edge_list(testing::data_path("karate.txt"));
  EXPECT_NEAR(avg_class_length(find_symmetric_nodes(karate)), 34.0 / 27.0,
              1e-12);
  EXPECT_THROW(avg_class_length(OrbitPartition::singletons(0)),
               UndefinedMetric);
}

// Shuffled isomorphic copy: target node perm[v] plays the role of v.
struct CopyPair {
  Graph source;
  Graph target;
  NodeMapping benchmark;
  OrbitPartition q;
  OrbitPartition p;
  ClassMapping ecm;
};

CopyPair make_copy_pair(int n, double density, std::mt19937_64& rng) {
  Graph g = random_gnp(n, density, rng);
  for (int t = 0; t < n / 10; ++t) g = testing::add_twin(g, rng() % g.node_count());
  const int m = g.node_count();
  auto perm = random_permutation(m, rng);
  Graph h = relabel(g, perm);
  NodeMapping benchmark = from_permutation(perm, MappingRole::kBenchmark);
  OrbitPartition q = find_symmetric_nodes(g);
  OrbitPartition p = find_symmetric_nodes(h);
  ClassMapping ecm = compute_ecm(q, p, benchmark);
  return {std::move(g), std::move(h), std::move(benchmark), std::move(q),
          std::move(p), std::move(ecm)};
}

TEST(SnacPropertyTest, DominatesAccuracy) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    CopyPair c = make_copy_pair(20 + 10 * trial, 0.08, rng);
    const int m = c.source.node_count();
    for (int r = 0; r < 50; ++r) {
      // Random injective mapping biased towards the benchmark so both
      // scores are nontrivial.
      std::vector<NodeId> perm(m);
      for (NodeId v = 0; v < m; ++v) perm[v] = *c.benchmark.target_of(v);
      for (int swaps = r % 7; swaps-- > 0;) {
        std::swap(perm[rng() % m], perm[rng() % m]);
      }
      if (r % 10 == 0) perm = random_permutation(m, rng);
      NodeMapping result = from_permutation(perm);
      ASSERT_GE(snac(result, c.ecm, c.q, c.p),
                accuracy(result, c.benchmark));
    }
  }
}

TEST(SnacPropertyTest, InvariantUnderTargetAutomorphisms) {
  std::mt19937_64 rng(47);
  int nontrivial = 0;
  for (int trial = 0; trial < 10; ++trial) {
    CopyPair c = make_copy_pair(30, 0.1, rng);
    for (const Permutation& sigma : automorphism_search(c.target).generators) {
      std::vector<NodeId> composed(c.source.node_count());
      bool moves = false;
      for (NodeId v = 0; v < c.source.node_count(); ++v) {
        composed[v] = sigma[*c.benchmark.target_of(v)];
        moves |= composed[v] != *c.benchmark.target_of(v);
      }
      NodeMapping result = from_permutation(composed);
      ASSERT_DOUBLE_EQ(snac(result, c.ecm, c.q, c.p), 1.0);
      if (moves) {
        ++nontrivial;
        ASSERT_LT(accuracy(result, c.benchmark), 1.0);
      }
    }
  }
  EXPECT_GT(nontrivial, 0);
}

RankedCandidates random_candidates(int n, std::mt19937_64& rng) {
  Lists lists;
  for (NodeId v = 0; v < n; ++v) {
    if (rng() % 8 == 0) continue;  // some sources have no list
    auto perm = random_permutation(n, rng);
    perm.resize(1 + rng() % n);
    lists.emplace_back(v, perm);
  }
  return RankedCandidates(lists, n, n);
}

TEST(RankingPropertyTest, MonotoneAndBoundedByPrecision) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 15;
    RankedCandidates cands = random_candidates(n, rng);
    NodeMapping benchmark =
        from_permutation(random_permutation(n, rng), MappingRole::kBenchmark);
    const double map = map_score(cands, benchmark);
    double last = 0.0;
    for (int k = 1; k <= n + 1; ++k) {
      const double pk = precision_at_k(cands, benchmark, k);
      ASSERT_GE(pk, last);
      last = pk;
    }
    // 1/rank lies in (0, 1] for listed targets, so MAP is squeezed between
    // the top-1 hit rate and the hit rate over whole lists. It is not below
    // every P@k: a lone rank-2 hit has MAP 0.5 and P@1 0.
    ASSERT_LE(precision_at_k(cands, benchmark, 1), map + 1e-12);
    ASSERT_LE(map, precision_at_k(cands, benchmark, n) + 1e-12);
  }
}

TEST(RankingPropertyTest, PrecisionAtOneEqualsAccuracy) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 20;
    auto top = random_permutation(n, rng);
    Lists lists;
    for (NodeId v = 0; v < n; ++v) {
      std::vector<NodeId> rest = random_permutation(n, rng);
      std::erase(rest, top[v]);
      rest.insert(rest.begin(), top[v]);
      rest.resize(1 + rng() % n);
      lists.emplace_back(v, rest);
    }
    NodeMapping benchmark =
        from_permutation(random_permutation(n, rng), MappingRole::kBenchmark);
    ASSERT_DOUBLE_EQ(precision_at_k(RankedCandidates(lists, n, n), benchmark, 1),
                     accuracy(from_permutation(top), benchmark));
  }
}

TEST(InteropPropertyTest, SymmetricUnderInverse) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 20;
    Graph a = random_gnp(n, 0.3, rng);
    Graph b = random_gnp(n, 0.3, rng);
    if (a.edge_count() + b.edge_count() == 0) continue;
    auto perm = random_permutation(n, rng);
    std::vector<NodeId> inverse(n);
    for (NodeId v = 0; v < n; ++v) inverse[perm[v]] = v;
    ASSERT_DOUBLE_EQ(interop(a, b, from_permutation(perm)),
                     interop(b, a, from_permutation(inverse)));
  }
}

}  // namespace
}  // namespace snac
