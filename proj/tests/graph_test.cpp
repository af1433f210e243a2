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

#include "snac/graph.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <random>
#include <set>

#include "snac/error.hpp"
#include "test_util.hpp"

namespace snac {
namespace {

using testing::random_gnp;

TEST(ParseEdgeListTest, TwoEdgesThreeNodes) {
  Graph g = parse_edge_list("a b\nb c");
  EXPECT_EQ(g.node_count(), 3);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.label(0), "a");
  EXPECT_EQ(g.label(2), "c");
}

TEST(ParseEdgeListTest, DuplicatesAndReversalsCollapse) {
  Graph g = parse_edge_list("a b\nb a\na b");
  EXPECT_EQ(g.node_count(), 2);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(ParseEdgeListTest, EmptyStream) {
  Graph g = parse_edge_list("");
  EXPECT_EQ(g.node_count(), 0);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(ParseEdgeListTest, CommentsBlanksAndSelfLoops) {
  Graph g = parse_edge_list("# header\n% konect style\n\n  \nx x\nx y\n");
  EXPECT_EQ(g.node_count(), 2);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_FALSE(g.has_edge(0, 0));
  EXPECT_EQ(*g.find("x"), 0);
}

TEST(ParseEdgeListTest, LabelsAreOpaqueStrings) {
  Graph g = parse_edge_list("10 9\n9 100");
  EXPECT_EQ(g.label(0), "10");
  EXPECT_EQ(g.label(1), "9");
  EXPECT_EQ(g.label(2), "100");
}

TEST(ParseEdgeListTest, MalformedLineReportsLineNumber) {
  try {
    parse_edge_list("a b\n# ok\nc d e\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_edge_list("lonely\n"), ParseError);
}

std::set<std::pair<std::string, std::string>> label_edges(const Graph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [u, v] : g.edges()) {
    out.emplace(std::min(g.label(u), g.label(v)),
                std::max(g.label(u), g.label(v)));
  }
  return out;
}

TEST(ParseEdgeListTest, RoundTripPreservesAdjacency) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_gnp(1 + trial % 17, 0.3, rng);
    Graph once = parse_edge_list(serialize_edge_list(g));
    Graph twice = parse_edge_list(serialize_edge_list(once));
    ASSERT_EQ(once.node_count(), g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
      ASSERT_TRUE(once.find(g.label(v)));
    }
    ASSERT_EQ(label_edges(once), label_edges(g));
    ASSERT_EQ(label_edges(twice), label_edges(once));
    ASSERT_EQ(twice.node_count(), once.node_count());
  }
}

TEST(GraphTest, RejectsBadInput) {
  std::vector<Edge> bad = {{0, 5}};
  EXPECT_THROW(Graph(3, bad), DataError);
  EXPECT_THROW(Graph(2, {}, {"a", "a"}), DataError);
}

TEST(ConnectedComponentsTest, TriangleAndEdge) {
  Graph g = parse_edge_list("a b\nb c\nc a\nd e\n");
  ComponentDecomposition cc = connected_components(g);
  ASSERT_EQ(cc.size(), 2u);
  EXPECT_EQ(cc.components[0], (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(cc.components[1], (std::vector<NodeId>{3, 4}));
}

TEST(ConnectedComponentsTest, EmptyGraph) {
  EXPECT_EQ(connected_components(Graph()).size(), 0u);
}

TEST(ConnectedComponentsTest, KarateClubIsConnected) {
  Graph g = read_edge_list(testing::data_path("karate.txt"));
  ASSERT_EQ(g.node_count(), 34);
  ASSERT_EQ(g.edge_count(), 78u);
  // Independent breadth-first traversal.
  std::vector<char> seen(g.node_count(), 0);
  std::deque<NodeId> queue = {0};
  seen[0] = 1;
  int reached = 0;
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    ++reached;
    for (NodeId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  EXPECT_EQ(reached, 34);
  ComponentDecomposition cc = connected_components(g);
  ASSERT_EQ(cc.size(), 1u);
  EXPECT_EQ(cc.components[0].size(), 34u);
}

TEST(ConnectedComponentsTest, PartitionInvariants) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = random_gnp(5 + trial, 2.0 / (5 + trial), rng);
    ComponentDecomposition cc = connected_components(g);
    std::vector<int> hits(g.node_count(), 0);
    NodeId last_min = -1;
    for (std::size_t c = 0; c < cc.size(); ++c) {
      ASSERT_FALSE(cc.components[c].empty());
      ASSERT_GT(cc.components[c].front(), last_min);
      last_min = cc.components[c].front();
      ASSERT_TRUE(std::is_sorted(cc.components[c].begin(),
                                 cc.components[c].end()));
      for (NodeId v : cc.components[c]) {
        ++hits[v];
        ASSERT_EQ(cc.component_id[v], static_cast<int>(c));
      }
      Subgraph sub = induced_subgraph(g, cc.components[c]);
      ASSERT_EQ(connected_components(sub.graph).size(), 1u);
    }
    for (int h : hits) ASSERT_EQ(h, 1);
    for (const auto& [u, v] : g.edges()) {
      ASSERT_EQ(cc.component_id[u], cc.component_id[v]);
    }
  }
}

TEST(InducedSubgraphTest, Examples) {
  Graph triangle = parse_edge_list("a b\nb c\nc a");
  const NodeId ab[] = {0, 1};
  Subgraph s = induced_subgraph(triangle, ab);
  EXPECT_EQ(s.graph.node_count(), 2);
  EXPECT_EQ(s.graph.edge_count(), 1u);
  EXPECT_EQ(s.graph.label(1), "b");

  Graph path = parse_edge_list("a b\nb c");
  const NodeId ac[] = {0, 2};
  s = induced_subgraph(path, ac);
  EXPECT_EQ(s.graph.node_count(), 2);
  EXPECT_EQ(s.graph.edge_count(), 0u);
  EXPECT_EQ(s.to_parent, (std::vector<NodeId>{0, 2}));

  const NodeId all[] = {0, 1, 2};
  s = induced_subgraph(triangle, all);
  EXPECT_EQ(s.to_parent, (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(s.graph.edges(), triangle.edges());
}

TEST(InducedSubgraphTest, Errors) {
  Graph path = parse_edge_list("a b\nb c");
  const NodeId out_of_range[] = {0, 3};
  const NodeId repeated[] = {1, 1};
  EXPECT_THROW(induced_subgraph(path, out_of_range), DataError);
  EXPECT_THROW(induced_subgraph(path, repeated), DataError);
}

TEST(InducedSubgraphTest, KeepsExactlyInternalEdges) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 10;
    Graph g = random_gnp(n, 0.5, rng);
    std::vector<NodeId> nodes;
    for (NodeId v = 0; v < n; ++v) {
      if (rng() % 2) nodes.push_back(v);
    }
    std::shuffle(nodes.begin(), nodes.end(), rng);
    Subgraph s = induced_subgraph(g, nodes);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (i == j) continue;
        ASSERT_EQ(s.graph.has_edge(static_cast<NodeId>(i),
                                   static_cast<NodeId>(j)),
                  g.has_edge(nodes[i], nodes[j]));
      }
    }
  }
}

}  // namespace
}  // namespace snac
