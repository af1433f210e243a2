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

#include "snac/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "snac/error.hpp"

namespace snac {
namespace {

using Tokens = std::vector<std::string>;

void for_each_record(std::istream& in,
                     const std::function<void(std::size_t, const Tokens&)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    Tokens tokens;
    for (std::string t; fields >> t;) tokens.push_back(std::move(t));
    if (tokens.empty() || tokens[0][0] == '#') continue;
    fn(line_no, tokens);
  }
}

NodeId resolve(const Graph& g, const std::string& label, std::size_t line,
               const char* side) {
  auto id = g.find(label);
  if (!id) {
    throw ParseError(line, fmt::format("unknown {} label '{}'", side, label));
  }
  return *id;
}

// Rethrows anything but a ParseError with the line attached.
template <typename F>
void at_line(std::size_t line, F&& body) {
  try {
    body();
  } catch (const ParseError&) {
    throw;
  } catch (const DataError& e) {
    throw ParseError(line, e.what());
  }
}

template <typename T, typename Parse>
T read_with(const std::string& path, Parse&& parse) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace

NodeMapping parse_mapping(std::istream& in, const Graph& source,
                          const Graph& target, MappingRole role) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<std::size_t> lines;
  for_each_record(in, [&](std::size_t line, const Tokens& t) {
    if (t.size() != 2) throw ParseError(line, "expected 'source target'");
    pairs.emplace_back(resolve(source, t[0], line, "source"),
                       resolve(target, t[1], line, "target"));
    lines.push_back(line);
  });
  // Validate incrementally so a repeated node is reported at its line.
  std::vector<char> seen_source(source.node_count()), seen_target(target.node_count());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [s, t] = pairs[i];
    if (seen_source[s]) throw ParseError(lines[i], "source node mapped twice");
    if (seen_target[t]) throw ParseError(lines[i], "target node mapped twice");
    seen_source[s] = seen_target[t] = 1;
  }
  return NodeMapping(std::move(pairs), role, source.node_count(),
                     target.node_count());
}

NodeMapping read_mapping(const std::string& path, const Graph& source,
                         const Graph& target, MappingRole role) {
  return read_with<NodeMapping>(path, [&](std::istream& in) {
    return parse_mapping(in, source, target, role);
  });
}

void write_mapping(const NodeMapping& mapping, const Graph& source,
                   const Graph& target, std::ostream& out) {
  for (const auto& [s, t] : mapping.pairs()) {
    out << source.label(s) << ' ' << target.label(t) << '\n';
  }
}

RankedCandidates parse_candidates(std::istream& in, const Graph& source,
                                  const Graph& target) {
  std::vector<std::pair<NodeId, std::vector<NodeId>>> lists;
  std::vector<char> seen(source.node_count());
  for_each_record(in, [&](std::size_t line, const Tokens& t) {
    if (t.size() < 2) throw ParseError(line, "expected 'source t1 t2 ...'");
    const NodeId s = resolve(source, t[0], line, "source");
    if (seen[s]) throw ParseError(line, "candidate list repeated for a source");
    seen[s] = 1;
    std::vector<NodeId> targets;
    for (std::size_t i = 1; i < t.size(); ++i) {
      targets.push_back(resolve(target, t[i], line, "target"));
    }
    at_line(line, [&] {
      // Checks duplicates within this one list.
      RankedCandidates({{0, targets}}, 1, target.node_count());
    });
    lists.emplace_back(s, std::move(targets));
  });
  return RankedCandidates(std::move(lists), source.node_count(),
                          target.node_count());
}

RankedCandidates read_candidates(const std::string& path, const Graph& source,
                                 const Graph& target) {
  return read_with<RankedCandidates>(path, [&](std::istream& in) {
    return parse_candidates(in, source, target);
  });
}

void write_orbits(const OrbitPartition& orbits, const Graph& g,
                  std::ostream& out) {
  std::vector<std::vector<std::string>> lines;
  for (const auto& members : orbits.classes) {
    std::vector<std::string> labels;
    for (NodeId v : members) labels.push_back(g.label(v));
    std::sort(labels.begin(), labels.end());
    lines.push_back(std::move(labels));
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& labels : lines) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out << (i ? " " : "") << labels[i];
    }
    out << '\n';
  }
}

std::string format_orbits(const OrbitPartition& orbits, const Graph& g) {
  std::ostringstream out;
  write_orbits(orbits, g, out);
  return out.str();
}

OrbitPartition parse_orbits(std::istream& in, const Graph& g) {
  std::vector<int> key(g.node_count(), -1);
  int next = 0;
  std::size_t last_line = 0;
  for_each_record(in, [&](std::size_t line, const Tokens& t) {
    for (const std::string& label : t) {
      const NodeId v = resolve(g, label, line, "node");
      if (key[v] != -1) throw ParseError(line, "node listed twice: " + label);
      key[v] = next;
    }
    ++next;
    last_line = line;
  });
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (key[v] == -1) {
      throw ParseError(last_line, "node missing from orbit file: " + g.label(v));
    }
  }
  return OrbitPartition::from_keys(key);
}

void write_orbit_table(const OrbitPartition& orbits, const Graph& g,
                       std::ostream& out) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << g.label(v) << ' ' << orbits.class_of[v] << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw DataError("failed writing '" + path + "'");
}

std::uint64_t content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

OrbitCache::OrbitCache(std::string directory)
    : directory_(std::move(directory)) {}

std::string OrbitCache::path_for(std::uint64_t key) const {
  return (std::filesystem::path(directory_) / fmt::format("{:016x}.orbits", key))
      .string();
}

std::optional<OrbitPartition> OrbitCache::load(std::uint64_t key,
                                               const Graph& g) const {
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  try {
    return parse_orbits(in, g);
  } catch (const DataError&) {
    return std::nullopt;  // stale or damaged entry; recompute
  }
}

void OrbitCache::store(std::uint64_t key, const Graph& g,
                       const OrbitPartition& orbits) const {
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) throw DataError("cannot create cache directory '" + directory_ + "'");
  // Write then rename so concurrent readers never see a partial file.
  const std::string path = path_for(key);
  const std::string tmp = path + ".tmp";
  write_file(tmp, format_orbits(orbits, g));
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError("cannot write cache entry '" + path + "'");
}

}  // namespace snac
