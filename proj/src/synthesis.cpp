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

#include "snac/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "snac/error.hpp"

namespace snac {
namespace {

void check_fraction(double value, const char* what) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

std::vector<NodeId> shuffled_range(int n, std::mt19937_64& rng) {
  std::vector<NodeId> out(n);
  std::iota(out.begin(), out.end(), 0);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

std::vector<Edge> gnp_edges(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

// Bag of node ids with O(1) uniform draw and removal.
class Pool {
 public:
  explicit Pool(int universe) : slot_(universe, -1) {}

  void insert(NodeId v) {
    slot_[v] = static_cast<int>(items_.size());
    items_.push_back(v);
  }
  void erase(NodeId v) {
    const int s = slot_[v];
    if (s < 0) return;
    items_[s] = items_.back();
    slot_[items_[s]] = s;
    items_.pop_back();
    slot_[v] = -1;
  }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  NodeId at(std::size_t i) const { return items_[i]; }
  NodeId draw(std::mt19937_64& rng) const {
    return items_[std::uniform_int_distribution<std::size_t>(
        0, items_.size() - 1)(rng)];
  }

 private:
  std::vector<NodeId> items_;
  std::vector<int> slot_;
};

}  // namespace

void GeneratorConfig::validate() const {
  if (n < 0) throw std::invalid_argument("node count must be non-negative");
  check_fraction(p, "edge probability");
}

Graph gilbert_graph(const GeneratorConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  return Graph(config.n, gnp_edges(config.n, config.p, rng));
}

Graph gilbert_components(const GeneratorConfig& config, int components,
                         int distinct) {
  config.validate();
  if (components < 0 || distinct < 1) {
    throw std::invalid_argument("need components >= 0 and distinct >= 1");
  }
  std::mt19937_64 rng(config.seed);
  std::vector<std::vector<Edge>> bases;
  for (int b = 0; b < distinct; ++b) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) {
        throw std::invalid_argument(
            "edge probability too small for connected components");
      }
      std::vector<Edge> edges = gnp_edges(config.n, config.p, rng);
      if (connected_components(Graph(config.n, edges)).size() <= 1) {
        bases.push_back(std::move(edges));
        break;
      }
    }
  }
  std::vector<Edge> edges;
  for (int c = 0; c < components; ++c) {
    const NodeId offset = c * config.n;
    std::vector<NodeId> perm = shuffled_range(config.n, rng);
    for (const auto& [u, v] : bases[c % distinct]) {
      edges.emplace_back(offset + perm[u], offset + perm[v]);
    }
  }
  return Graph(components * config.n, edges);
}

Graph inject_twins(const Graph& g, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0)) throw std::invalid_argument("twin ratio must be >= 0");
  const int n = g.node_count();
  const int total = static_cast<int>(std::llround(n * (1.0 + ratio)));
  if (n == 0 && ratio > 0.0) {
    throw DataError("cannot clone nodes of an empty graph");
  }
  if (total == n) return g;

  std::vector<std::vector<NodeId>> adj(n);
  for (NodeId v = 0; v < n; ++v) {
    adj[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
  }
  std::vector<std::string> labels = g.labels();
  std::unordered_set<std::string> taken(labels.begin(), labels.end());
  std::mt19937_64 rng(seed);
  for (NodeId clone = n; clone < total; ++clone) {
    const NodeId v =
        std::uniform_int_distribution<NodeId>(0, clone - 1)(rng);
    adj.push_back(adj[v]);
    for (NodeId w : adj[v]) adj[w].push_back(clone);
    std::string label = std::to_string(clone);
    for (int k = 1; taken.contains(label); ++k) {
      label = std::to_string(clone) + "_" + std::to_string(k);
    }
    taken.insert(label);
    labels.push_back(std::move(label));
  }
  std::vector<Edge> edges;
  for (NodeId v = 0; v < total; ++v) {
    for (NodeId w : adj[v]) {
      if (v < w) edges.emplace_back(v, w);
    }
  }
  return Graph(total, edges, std::move(labels));
}

ShuffledCopy shuffle_labels(const Graph& g, double ratio, std::uint64_t seed) {
  check_fraction(ratio, "shuffle ratio");
  const int n = g.node_count();
  std::mt19937_64 rng(seed);
  const std::vector<NodeId> perm = shuffled_range(n, rng);

  // The epsilon keeps products such as 0.29 * 100 from flooring to 28.
  int k = static_cast<int>(std::floor(ratio * n + 1e-9));
  if (k == 1) {
    if (n < 2) throw DataError("a single node cannot be deranged");
    k = 2;
  }
  std::vector<NodeId> chosen = shuffled_range(n, rng);
  chosen.resize(k);
  std::sort(chosen.begin(), chosen.end());
  // Uniform derangement by rejection; about e draws on average.
  std::vector<int> delta(k);
  std::iota(delta.begin(), delta.end(), 0);
  for (;;) {
    std::shuffle(delta.begin(), delta.end(), rng);
    bool fixed_point = false;
    for (int i = 0; i < k && !fixed_point; ++i) fixed_point = delta[i] == i;
    if (!fixed_point) break;
  }

  std::vector<std::string> labels(n);
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) labels[perm[v]] = g.label(v);
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);

  std::vector<NodeId> image = perm;
  for (int i = 0; i < k; ++i) image[chosen[i]] = perm[chosen[delta[i]]];
  std::vector<std::pair<NodeId, NodeId>> bench, result;
  for (NodeId v = 0; v < n; ++v) {
    bench.emplace_back(v, perm[v]);
    result.emplace_back(v, image[v]);
  }
  return ShuffledCopy{
      Graph(n, edges, std::move(labels)),
      NodeMapping(std::move(bench), MappingRole::kBenchmark, n, n),
      NodeMapping(std::move(result), MappingRole::kResult, n, n), k};
}

Graph remove_edges(const Graph& g, double p, std::uint64_t seed) {
  check_fraction(p, "removal probability");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution drop(p);
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (!drop(rng)) kept.push_back(e);
  }
  return Graph(g.node_count(), kept, g.labels());
}

AlignerOutcome simulated_aligner(const OrbitPartition& source,
                                 const OrbitPartition& target,
                                 const NodeMapping& benchmark,
                                 const ClassMapping& ecm,
                                 const SimulatedAlignerConfig& config) {
  check_fraction(config.x, "recognition probability");
  if (benchmark.source_nodes() != source.node_count() ||
      benchmark.target_nodes() != target.node_count() ||
      static_cast<int>(ecm.target_class.size()) != source.class_count()) {
    throw DataError("aligner inputs do not fit together");
  }
  const int m = target.node_count();
  std::mt19937_64 rng(config.seed);

  std::vector<NodeId> sources;
  for (const auto& [s, t] : benchmark.pairs()) sources.push_back(s);
  std::sort(sources.begin(), sources.end());
  std::bernoulli_distribution recognize(config.x);
  std::vector<char> hit(sources.size());
  for (auto& h : hit) h = recognize(rng);
  std::vector<std::size_t> order(sources.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  Pool unused(m);
  std::vector<Pool> unused_in(target.class_count(), Pool(m));
  for (NodeId t = 0; t < m; ++t) {
    unused.insert(t);
    unused_in[target.class_of[t]].insert(t);
  }
  auto claim = [&](NodeId t) {
    unused.erase(t);
    unused_in[target.class_of[t]].erase(t);
  };
  auto correct_class = [&](NodeId s) {
    return ecm.target_class[source.class_of[s]];
  };

  AlignerOutcome out;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<NodeId> missed;
  for (std::size_t i : order) {
    const NodeId s = sources[i];
    if (!hit[i]) {
      missed.push_back(s);
      continue;
    }
    Pool& members = unused_in[correct_class(s)];
    if (members.empty()) {
      ++out.demoted;
      missed.push_back(s);
      continue;
    }
    const NodeId t = members.draw(rng);
    claim(t);
    pairs.emplace_back(s, t);
  }
  for (NodeId s : missed) {
    const int c = correct_class(s);
    const std::size_t outside = unused.size() - unused_in[c].size();
    NodeId t = -1;
    if (outside == 0) {
      ++out.forced;
      t = unused_in[c].draw(rng);
    } else if (outside * 4 >= unused.size()) {
      do t = unused.draw(rng);
      while (target.class_of[t] == c);
    } else {
      // Mostly one class left: sample the complement explicitly.
      std::vector<NodeId> candidates;
      for (std::size_t j = 0; j < unused.size(); ++j) {
        if (target.class_of[unused.at(j)] != c) {
          candidates.push_back(unused.at(j));
        }
      }
      std::sort(candidates.begin(), candidates.end());
      t = candidates[std::uniform_int_distribution<std::size_t>(
          0, candidates.size() - 1)(rng)];
    }
    claim(t);
    pairs.emplace_back(s, t);
  }
  std::sort(pairs.begin(), pairs.end());
  out.mapping = NodeMapping(std::move(pairs), MappingRole::kResult,
                            source.node_count(), m);
  return out;
}

}  // namespace snac
