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

// Text formats for mappings, candidate lists and orbit partitions. Nodes are
// always referred to by their external labels; lines starting with '#' are
// comments. Parse failures throw ParseError with the 1-based line number.

#ifndef SNAC_IO_HPP_
#define SNAC_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "snac/automorphism.hpp"
#include "snac/graph.hpp"
#include "snac/metrics.hpp"

namespace snac {

// "source target" per line.
NodeMapping parse_mapping(std::istream& in, const Graph& source,
                          const Graph& target, MappingRole role);
NodeMapping read_mapping(const std::string& path, const Graph& source,
                         const Graph& target, MappingRole role);
void write_mapping(const NodeMapping& mapping, const Graph& source,
                   const Graph& target, std::ostream& out);

// "source t1 t2 ..." per line, best candidate first.
RankedCandidates parse_candidates(std::istream& in, const Graph& source,
                                  const Graph& target);
RankedCandidates read_candidates(const std::string& path, const Graph& source,
                                 const Graph& target);

// One class per line, labels sorted lexicographically, lines sorted by their
// first label. The output depends only on the partition and the labels, so
// equal partitions give byte-identical files.
void write_orbits(const OrbitPartition& orbits, const Graph& g,
                  std::ostream& out);
std::string format_orbits(const OrbitPartition& orbits, const Graph& g);
// Inverse of write_orbits. Throws ParseError unless every node appears
// exactly once.
OrbitPartition parse_orbits(std::istream& in, const Graph& g);

// "label class" per node in node order, for joining with other tables.
void write_orbit_table(const OrbitPartition& orbits, const Graph& g,
                       std::ostream& out);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// 64-bit FNV-1a.
std::uint64_t content_hash(std::string_view bytes);

// Orbit files stored under `directory` by content hash of the edge list
// they were computed from.
class OrbitCache {
 public:
  explicit OrbitCache(std::string directory);

  std::optional<OrbitPartition> load(std::uint64_t key, const Graph& g) const;
  void store(std::uint64_t key, const Graph& g,
             const OrbitPartition& orbits) const;
  std::string path_for(std::uint64_t key) const;

 private:
  std::string directory_;
};

}  // namespace snac

#endif  // SNAC_IO_HPP_
