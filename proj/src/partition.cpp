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

#include "snac/partition.hpp"

#include <algorithm>
#include <limits>

#include "snac/error.hpp"

namespace snac {

namespace {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  // splitmix64 finalizer over the running hash.
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

}  // namespace

ColorPartition ColorPartition::uniform(int n) {
  ColorPartition p;
  p.color.assign(n, 0);
  if (n > 0) {
    p.cells.emplace_back(n);
    for (int i = 0; i < n; ++i) p.cells[0][i] = i;
  }
  return p;
}

ColorPartition ColorPartition::from_colors(std::span<const int> colors) {
  std::vector<int> values(colors.begin(), colors.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  ColorPartition p;
  p.color.resize(colors.size());
  p.cells.resize(values.size());
  for (std::size_t v = 0; v < colors.size(); ++v) {
    int c = static_cast<int>(
        std::lower_bound(values.begin(), values.end(), colors[v]) -
        values.begin());
    p.color[v] = c;
    p.cells[c].push_back(static_cast<NodeId>(v));
  }
  return p;
}

OrderedPartition::OrderedPartition(int n)
    : elements_(n), position_(n), start_(n, 0), end_(n, n),
      cell_count_(n > 0 ? 1 : 0) {
  for (int i = 0; i < n; ++i) elements_[i] = position_[i] = i;
}

OrderedPartition::OrderedPartition(const ColorPartition& colors) {
  const int n = static_cast<int>(colors.color.size());
  elements_.reserve(n);
  position_.assign(n, -1);
  start_.assign(n, 0);
  end_.assign(n, n);
  for (const auto& cell : colors.cells) {
    if (cell.empty()) throw DataError("color partition has an empty cell");
    const int start = static_cast<int>(elements_.size());
    for (NodeId v : cell) {
      if (v < 0 || v >= n || position_[v] != -1) {
        throw DataError("color partition does not partition the node set");
      }
      position_[v] = static_cast<int>(elements_.size());
      start_[v] = start;
      elements_.push_back(v);
    }
    end_[start] = static_cast<int>(elements_.size());
    ++cell_count_;
  }
  if (static_cast<int>(elements_.size()) != n) {
    throw DataError("color partition does not cover the node set");
  }
}

int OrderedPartition::individualize(NodeId v) {
  const int s = start_[v];
  const int e = end_[s];
  if (e - s == 1) return s;
  const int p = position_[v];
  const NodeId front = elements_[s];
  elements_[s] = v;
  position_[v] = s;
  elements_[p] = front;
  position_[front] = p;
  end_[s] = s + 1;
  end_[s + 1] = e;
  for (int i = s + 1; i < e; ++i) start_[elements_[i]] = s + 1;
  ++cell_count_;
  return s;
}

int OrderedPartition::target_cell() const {
  const int n = node_count();
  int best = -1;
  int best_size = std::numeric_limits<int>::max();
  for (int s = 0; s < n; s = end_[s]) {
    const int size = end_[s] - s;
    if (size > 1 && size < best_size) {
      best = s;
      best_size = size;
      if (size == 2) break;
    }
  }
  return best;
}

ColorPartition OrderedPartition::to_colors() const {
  const int n = node_count();
  ColorPartition out;
  out.color.resize(n);
  for (int s = 0; s < n; s = end_[s]) {
    auto& cell = out.cells.emplace_back(elements_.begin() + s,
                                        elements_.begin() + end_[s]);
    std::sort(cell.begin(), cell.end());
    for (NodeId v : cell) out.color[v] = out.size() - 1;
  }
  return out;
}

Refiner::Refiner(const Graph& g)
    : graph_(g), count_(g.node_count(), 0), queued_(g.node_count(), 0) {}

std::uint64_t Refiner::refine_all(OrderedPartition& p) {
  std::vector<int> starts;
  for (int s = 0; s < p.node_count(); s = p.end_[s]) starts.push_back(s);
  return refine(p, starts);
}

std::uint64_t Refiner::refine(OrderedPartition& p,
                              std::span<const int> splitters) {
  auto& elems = p.elements_;
  auto& pos = p.position_;
  auto& start = p.start_;
  auto& end = p.end_;

  queue_.clear();
  for (int s : splitters) {
    if (!queued_[s]) {
      queued_[s] = 1;
      queue_.push_back(s);
    }
  }

  struct Fragment {
    int begin, end, count;
  };
  std::vector<Fragment> fragments;
  std::uint64_t trace = 0x5eed;

  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const int w = queue_[head];
    queued_[w] = 0;
    trace = mix(trace, static_cast<std::uint64_t>(w));

    touched_.clear();
    for (int i = w; i < end[w]; ++i) {
      for (NodeId x : graph_.neighbors(elems[i])) {
        if (count_[x]++ == 0) touched_.push_back(x);
      }
    }
    if (touched_.empty()) continue;
    std::sort(touched_.begin(), touched_.end(), [&](NodeId a, NodeId b) {
      if (start[a] != start[b]) return start[a] < start[b];
      if (count_[a] != count_[b]) return count_[a] < count_[b];
      return a < b;
    });

    for (std::size_t a = 0; a < touched_.size();) {
      const int s = start[touched_[a]];
      std::size_t b = a;
      while (b < touched_.size() && start[touched_[b]] == s) ++b;
      const int size = end[s] - s;
      const int hit = static_cast<int>(b - a);
      const int lo = count_[touched_[a]];
      const int hi = count_[touched_[b - 1]];
      trace = mix(trace, (static_cast<std::uint64_t>(s) << 32) ^
                             static_cast<std::uint64_t>(hit));
      if (size == 1 || (hit == size && lo == hi)) {
        trace = mix(trace, static_cast<std::uint64_t>(lo));
        a = b;
        continue;
      }

      // Move the touched nodes to the tail of the cell, ordered by count.
      const int tail = s + size - hit;
      misplaced_.clear();
      for (std::size_t j = a; j < b; ++j) {
        if (pos[touched_[j]] < tail) misplaced_.push_back(touched_[j]);
      }
      std::size_t mi = 0;
      for (int q = tail; q < s + size && mi < misplaced_.size(); ++q) {
        const NodeId y = elems[q];
        if (count_[y] != 0) continue;
        const NodeId x = misplaced_[mi++];
        const int px = pos[x];
        elems[px] = y;
        pos[y] = px;
        elems[q] = x;
        pos[x] = q;
      }
      for (std::size_t j = a; j < b; ++j) {
        const int q = tail + static_cast<int>(j - a);
        elems[q] = touched_[j];
        pos[touched_[j]] = q;
      }

      fragments.clear();
      if (tail > s) fragments.push_back({s, tail, 0});
      for (int q = tail; q < s + size; ++q) {
        const int c = count_[elems[q]];
        if (fragments.empty() || fragments.back().count != c ||
            fragments.back().begin < tail) {
          fragments.push_back({q, q + 1, c});
        } else {
          fragments.back().end = q + 1;
        }
      }

      const bool was_queued = queued_[s] != 0;
      std::size_t largest = 0;
      for (std::size_t f = 0; f < fragments.size(); ++f) {
        const Fragment& fr = fragments[f];
        end[fr.begin] = fr.end;
        if (f > 0) {
          for (int q = fr.begin; q < fr.end; ++q) start[elems[q]] = fr.begin;
        }
        if (fr.end - fr.begin >
            fragments[largest].end - fragments[largest].begin) {
          largest = f;
        }
        trace = mix(trace, (static_cast<std::uint64_t>(fr.end - fr.begin)
                            << 32) ^
                               static_cast<std::uint64_t>(fr.count));
      }
      p.cell_count_ += static_cast<int>(fragments.size()) - 1;

      for (std::size_t f = 0; f < fragments.size(); ++f) {
        const int fs = fragments[f].begin;
        if (queued_[fs]) continue;
        if (was_queued || f != largest) {
          queued_[fs] = 1;
          queue_.push_back(fs);
        }
      }
      a = b;
    }
    for (NodeId x : touched_) count_[x] = 0;
  }
  return mix(trace, static_cast<std::uint64_t>(p.cell_count_));
}

ColorPartition refine_colors(const Graph& g, const ColorPartition& initial) {
  if (static_cast<int>(initial.color.size()) != g.node_count()) {
    throw DataError("initial coloring does not match the graph");
  }
  OrderedPartition p(initial);
  Refiner refiner(g);
  refiner.refine_all(p);
  return p.to_colors();
}

}  // namespace snac
