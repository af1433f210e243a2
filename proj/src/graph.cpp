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

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "snac/error.hpp"

namespace snac {

Graph::Graph(int node_count, std::span<const Edge> edges,
             std::vector<std::string> labels)
    : adjacency_(node_count) {
  if (labels.empty()) {
    labels.reserve(node_count);
    for (int i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
  }
  if (static_cast<int>(labels.size()) != node_count) {
    throw DataError("label count does not match node count");
  }
  labels_ = std::move(labels);
  index_.reserve(labels_.size());
  for (int i = 0; i < node_count; ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw DataError("duplicate node label '" + labels_[i] + "'");
    }
  }
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count) {
      throw DataError("edge endpoint out of range");
    }
    if (u == v) continue;
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    edge_count_ += adj.size();
  }
  edge_count_ /= 2;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

NodeId GraphBuilder::add_node(std::string_view label) {
  auto [it, inserted] =
      index_.emplace(std::string(label), static_cast<NodeId>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

void GraphBuilder::add_edge(std::string_view u, std::string_view v) {
  NodeId a = add_node(u);
  NodeId b = add_node(v);
  edges_.emplace_back(a, b);
}

void GraphBuilder::add_edge(NodeId u, NodeId v) { edges_.emplace_back(u, v); }

Graph GraphBuilder::build() const {
  return Graph(static_cast<int>(labels_.size()), edges_, labels_);
}

Graph parse_edge_list(std::istream& in) {
  GraphBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;  // blank
    if (a[0] == '#' || a[0] == '%') continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw ParseError(line_no, "expected two node labels");
    }
    builder.add_edge(a, b);
  }
  return builder.build();
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return parse_edge_list(in);
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& [u, v] : g.edges()) {
    out << g.label(u) << ' ' << g.label(v) << '\n';
  }
  // Isolated nodes survive a round trip as self-loop declarations.
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) out << g.label(v) << ' ' << g.label(v) << '\n';
  }
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

ComponentDecomposition connected_components(const Graph& g) {
  const int n = g.node_count();
  ComponentDecomposition result;
  result.component_id.assign(n, -1);
  std::vector<NodeId> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (result.component_id[root] != -1) continue;
    const int id = static_cast<int>(result.components.size());
    auto& members = result.components.emplace_back();
    result.component_id[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (result.component_id[w] == -1) {
          result.component_id[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
  }
  return result;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<int> local(g.node_count(), -1);
  std::vector<std::string> labels;
  labels.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    NodeId v = nodes[i];
    if (v < 0 || v >= g.node_count()) {
      throw DataError("induced_subgraph: node index out of range");
    }
    if (local[v] != -1) throw DataError("induced_subgraph: repeated node");
    local[v] = static_cast<int>(i);
    labels.push_back(g.label(v));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeId w : g.neighbors(nodes[i])) {
      if (local[w] > static_cast<int>(i)) {
        edges.emplace_back(static_cast<int>(i), local[w]);
      }
    }
  }
  return {Graph(static_cast<int>(nodes.size()), edges, std::move(labels)),
          std::vector<NodeId>(nodes.begin(), nodes.end())};
}

}  // namespace snac
