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

// Undirected simple graphs over dense node indices [0, n), each node carrying
// an opaque external label.

#ifndef SNAC_GRAPH_HPP_
#define SNAC_GRAPH_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace snac {

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;

class Graph {
 public:
  Graph() = default;

  // Builds a graph from an edge list. Self-loops and duplicate (or reversed)
  // edges are dropped. When `labels` is empty, node i is labelled
  // std::to_string(i). Throws DataError on out-of-range endpoints or
  // repeated labels.
  Graph(int node_count, std::span<const Edge> edges,
        std::vector<std::string> labels = {});

  int node_count() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  // Sorted, duplicate-free.
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[v].size()); }
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

  // Edges with u < v, sorted by (u, v).
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::size_t edge_count_ = 0;
};

// Incremental construction used by the edge-list parser and generators.
// Nodes are numbered in first-appearance order.
class GraphBuilder {
 public:
  NodeId add_node(std::string_view label);
  void add_edge(std::string_view u, std::string_view v);
  void add_edge(NodeId u, NodeId v);
  Graph build() const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
};

// One edge per line, two whitespace-separated labels. Lines starting with '#'
// or '%' are comments. A self-loop "a a" declares node a without an edge.
// Throws ParseError carrying the 1-based line number.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(std::string_view text);
Graph read_edge_list(const std::string& path);

// "labelU labelV" per edge, sorted by (min index, max index), then "v v" for
// every isolated node.
void write_edge_list(const Graph& g, std::ostream& out);
std::string serialize_edge_list(const Graph& g);

struct ComponentDecomposition {
  std::vector<int> component_id;                // per node
  std::vector<std::vector<NodeId>> components;  // each sorted ascending

  std::size_t size() const { return components.size(); }
};

// Components are ordered by their smallest member.
ComponentDecomposition connected_components(const Graph& g);

struct Subgraph {
  Graph graph;
  std::vector<NodeId> to_parent;  // subgraph index -> original index
};

// The subgraph induced on `nodes`; node i of the result is nodes[i] and keeps
// its label. Throws DataError on out-of-range or repeated indices.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

}  // namespace snac

#endif  // SNAC_GRAPH_HPP_
