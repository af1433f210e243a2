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

// Vertex colorings and color refinement (the 1-dimensional Weisfeiler-Lehman
// procedure).
//
// OrderedPartition keeps every cell as a contiguous range of one element
// array, so splitting a cell is local and the position of a cell is a
// label-independent quantity. Refiner splits cells by neighbor counts into a
// splitter cell; everything it decides (which cell to split, fragment order,
// which fragments to enqueue) depends only on positions and counts, never on
// node indices. Running it on an isomorphic copy of a graph therefore yields
// the image partition and the same trace, which is what the automorphism and
// isomorphism searches rely on.

#ifndef SNAC_PARTITION_HPP_
#define SNAC_PARTITION_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "snac/graph.hpp"

namespace snac {

struct ColorPartition {
  std::vector<int> color;                  // per node, consecutive from 0
  std::vector<std::vector<NodeId>> cells;  // cells[c] sorted ascending

  static ColorPartition uniform(int n);
  // Renumbers arbitrary color values to 0.. by rank of value.
  static ColorPartition from_colors(std::span<const int> colors);

  int size() const { return static_cast<int>(cells.size()); }
  bool operator==(const ColorPartition&) const = default;
};

// Coarsest equitable partition finer than `initial`. Colors of the result
// are numbered by cell position in the refined ordered partition.
ColorPartition refine_colors(const Graph& g, const ColorPartition& initial);

class OrderedPartition {
 public:
  OrderedPartition() = default;
  explicit OrderedPartition(int n);
  // Cells laid out in color order.
  explicit OrderedPartition(const ColorPartition& colors);

  int node_count() const { return static_cast<int>(elements_.size()); }
  int cell_count() const { return cell_count_; }
  bool discrete() const { return cell_count_ == node_count(); }

  int cell_start(NodeId v) const { return start_[v]; }
  int cell_end(int start) const { return end_[start]; }
  int cell_size(int start) const { return end_[start] - start; }
  std::span<const NodeId> cell(int start) const {
    return {elements_.data() + start,
            static_cast<std::size_t>(end_[start] - start)};
  }
  std::span<const NodeId> elements() const { return elements_; }

  // Splits v off the front of its cell. Returns the start of the new
  // singleton cell (unchanged position of the old cell).
  int individualize(NodeId v);

  // First non-singleton cell of minimum size, ties by position; -1 when
  // discrete.
  int target_cell() const;

  ColorPartition to_colors() const;

 private:
  friend class Refiner;

  std::vector<NodeId> elements_;
  std::vector<int> position_;  // node -> index in elements_
  std::vector<int> start_;     // node -> start of its cell
  std::vector<int> end_;       // cell start -> one past the last element
  int cell_count_ = 0;
};

// Reusable scratch space for refining partitions of one graph.
class Refiner {
 public:
  explicit Refiner(const Graph& g);

  // Refines `p` to the coarsest equitable partition reachable by splitting
  // against the given splitter cells (and the cells they split). Returns a
  // trace hash summarizing every split performed, in order.
  std::uint64_t refine(OrderedPartition& p, std::span<const int> splitters);
  std::uint64_t refine_all(OrderedPartition& p);

 private:
  const Graph& graph_;
  std::vector<int> count_;
  std::vector<NodeId> touched_;
  std::vector<char> queued_;
  std::vector<int> queue_;
  std::vector<NodeId> misplaced_;
};

}  // namespace snac

#endif  // SNAC_PARTITION_HPP_
