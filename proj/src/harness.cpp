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

#include "snac/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"
#include "snac/error.hpp"
#include "snac/parallel.hpp"

namespace snac {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
};

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::string generator_name(const GeneratorConfig& g) {
  return fmt::format("gilbert_n{}_p{}", g.n, format_number(g.p));
}

// Graph sources of a sweep: loaded datasets, or one generated graph per seed.
struct GraphSource {
  std::vector<std::string> names;
  std::vector<Graph> loaded;
  std::optional<GeneratorConfig> generator;

  std::size_t count() const { return names.size(); }
  Graph graph(std::size_t d, int seed, std::uint64_t base) const {
    if (!generator) return loaded[d];
    GeneratorConfig cfg = *generator;
    cfg.seed = derive_seed(base, 0, static_cast<std::uint64_t>(seed));
    return gilbert_graph(cfg);
  }
};

GraphSource graph_source(const ExperimentSpec& spec) {
  GraphSource src;
  if (!spec.datasets.empty()) {
    for (const std::string& path : spec.datasets) {
      src.names.push_back(path);
      src.loaded.push_back(load_graph(path).graph);
    }
  } else {
    src.generator = spec.generator;
    src.names.push_back(generator_name(*spec.generator));
  }
  return src;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

SymmetryOptions serial() { return SymmetryOptions{true, 1}; }

ExperimentResult run_basic_ability(const ExperimentSpec& spec) {
  const GraphSource src = graph_source(spec);
  const std::vector<double> ratios = sorted_unique(spec.sweep);
  struct Cell {
    double ac = 0, snac = 0, shuffled = 0;
  };
  const std::size_t tasks = src.count() * spec.seeds;
  std::vector<std::vector<Cell>> cells(tasks, std::vector<Cell>(ratios.size()));
  parallel_for(tasks, spec.workers, [&](std::size_t task) {
    const std::size_t d = task / spec.seeds;
    const int s = static_cast<int>(task % spec.seeds);
    const Graph g = src.graph(d, s, spec.base_seed);
    const OrbitPartition q = find_symmetric_nodes(g, serial());
    for (std::size_t r = 0; r < ratios.size(); ++r) {
      ShuffledCopy copy = shuffle_labels(
          g, ratios[r], derive_seed(spec.base_seed, 1, static_cast<std::uint64_t>(s)));
      const OrbitPartition p = find_symmetric_nodes(copy.target, serial());
      const ClassMapping ecm = compute_ecm(q, p, copy.benchmark);
      cells[task][r] = {accuracy(copy.result, copy.benchmark),
                        snac(copy.result, ecm, q, p),
                        static_cast<double>(copy.shuffled) / g.node_count()};
    }
  });
  ExperimentResult out;
  out.table.header = {"dataset",  "ratio",   "seeds",    "shuffled_fraction",
                      "ac_mean",  "ac_std",  "snac_mean", "snac_std"};
  for (std::size_t d = 0; d < src.count(); ++d) {
    for (std::size_t r = 0; r < ratios.size(); ++r) {
      std::vector<double> ac, sn, sh;
      for (int s = 0; s < spec.seeds; ++s) {
        const Cell& c = cells[d * spec.seeds + s][r];
        ac.push_back(c.ac);
        sn.push_back(c.snac);
        sh.push_back(c.shuffled);
      }
      const Summary a = summarize(ac), b = summarize(sn);
      out.table.rows.push_back(
          {src.names[d], format_number(ratios[r]), std::to_string(spec.seeds),
           format_number(summarize(sh).mean), format_number(a.mean),
           format_number(a.std), format_number(b.mean), format_number(b.std)});
    }
  }
  return out;
}

ExperimentResult run_stability(const ExperimentSpec& spec) {
  const GraphSource src = graph_source(spec);
  const std::vector<double> ratios = sorted_unique(spec.sweep);
  const std::vector<double> xs = sorted_unique(spec.x_values);
  struct Cell {
    double ac = 0, snac = 0, len = 1, repairs = 0;
  };
  const std::size_t per_dataset = ratios.size() * spec.seeds;
  const std::size_t tasks = src.count() * per_dataset;
  std::vector<std::vector<Cell>> cells(tasks, std::vector<Cell>(xs.size()));
  parallel_for(tasks, spec.workers, [&](std::size_t task) {
    const std::size_t d = task / per_dataset;
    const std::size_t r = (task % per_dataset) / spec.seeds;
    const auto s = static_cast<std::uint64_t>(task % spec.seeds);
    // The same base graph and clone stream for every ratio of a seed, so
    // larger ratios extend smaller ones.
    const Graph g = inject_twins(src.graph(d, static_cast<int>(s), spec.base_seed),
                                 ratios[r], derive_seed(spec.base_seed, 2, s));
    ShuffledCopy copy = shuffle_labels(g, 0.0, derive_seed(spec.base_seed, 1, s));
    const OrbitPartition q = find_symmetric_nodes(g, serial());
    const OrbitPartition p = find_symmetric_nodes(copy.target, serial());
    const ClassMapping ecm = compute_ecm(q, p, copy.benchmark);
    const double len = avg_class_length(q);
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      AlignerOutcome a = simulated_aligner(
          q, p, copy.benchmark, ecm, {xs[xi], derive_seed(spec.base_seed, 3 + xi, s)});
      cells[task][xi] = {accuracy(a.mapping, copy.benchmark),
                         snac(a.mapping, ecm, q, p), len,
                         static_cast<double>(a.demoted + a.forced)};
    }
  });
  ExperimentResult out;
  out.table.header = {"dataset",           "twin_ratio",
                      "x",                 "seeds",
                      "avg_class_length_mean", "ac_mean",
                      "ac_std",            "snac_mean",
                      "snac_std",          "ac_times_len_mean",
                      "ac_times_len_std",  "repairs_mean"};
  for (std::size_t d = 0; d < src.count(); ++d) {
    for (std::size_t r = 0; r < ratios.size(); ++r) {
      for (std::size_t xi = 0; xi < xs.size(); ++xi) {
        std::vector<double> ac, sn, len, prod, rep;
        for (int s = 0; s < spec.seeds; ++s) {
          const Cell& c = cells[d * per_dataset + r * spec.seeds + s][xi];
          ac.push_back(c.ac);
          sn.push_back(c.snac);
          len.push_back(c.len);
          prod.push_back(c.ac * c.len);
          rep.push_back(c.repairs);
        }
        const Summary a = summarize(ac), b = summarize(sn), m = summarize(prod);
        out.table.rows.push_back(
            {src.names[d], format_number(ratios[r]), format_number(xs[xi]),
             std::to_string(spec.seeds), format_number(summarize(len).mean),
             format_number(a.mean), format_number(a.std), format_number(b.mean),
             format_number(b.std), format_number(m.mean), format_number(m.std),
             format_number(summarize(rep).mean)});
      }
    }
  }
  return out;
}

ExperimentResult run_stats(const ExperimentSpec& spec) {
  ExperimentResult out;
  out.table.header = {"dataset", "nodes", "edges", "classes", "avg_class_length"};
  for (const std::string& path : spec.datasets) {
    try {
      LoadedGraph g = load_graph(path);
      OrbitPartition orbits = find_symmetric_nodes(g.graph, {true, spec.workers});
      OrbitStats st = orbit_stats(g.graph, orbits);
      out.table.rows.push_back({path, std::to_string(st.nodes),
                                std::to_string(st.edges),
                                std::to_string(st.classes),
                                format_number(st.avg_class_length)});
    } catch (const DataError& e) {
      out.errors.push_back(e.what());
    } catch (const UndefinedMetric& e) {
      out.errors.push_back(path + ": " + e.what());
    }
  }
  return out;
}

ExperimentResult run_appendix_timing(const ExperimentSpec& spec) {
  std::vector<std::string> names;
  std::vector<Graph> graphs;
  for (const std::string& path : spec.datasets) {
    names.push_back(path);
    graphs.push_back(load_graph(path).graph);
  }
  if (spec.components > 0) {
    GeneratorConfig cfg = *spec.generator;
    cfg.seed = derive_seed(spec.base_seed, 0);
    names.push_back(fmt::format("gilbert_components_c{}_d{}_n{}_p{}",
                                spec.components, spec.distinct, cfg.n,
                                format_number(cfg.p)));
    graphs.push_back(gilbert_components(cfg, spec.components, spec.distinct));
  }
  ExperimentResult out;
  out.table.header = {"dataset",          "nodes",
                      "components",       "largest_component_prop",
                      "direct_seconds",   "decomposed_seconds",
                      "speedup",          "identical"};
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = graphs[i];
    double direct = INFINITY, decomposed = INFINITY;
    std::string direct_file, decomposed_file;
    // Alternate the two modes so drift in machine load hits both.
    for (int rep = 0; rep < spec.repeats; ++rep) {
      auto start = Clock::now();
      OrbitPartition a = find_symmetric_nodes(g, {false, 1});
      direct = std::min(direct, seconds_since(start));
      start = Clock::now();
      OrbitPartition b = find_symmetric_nodes(g, {true, spec.workers});
      decomposed = std::min(decomposed, seconds_since(start));
      if (rep == 0) {
        direct_file = format_orbits(a, g);
        decomposed_file = format_orbits(b, g);
      }
    }
    const ComponentDecomposition cc = connected_components(g);
    std::size_t largest = 0;
    for (const auto& c : cc.components) largest = std::max(largest, c.size());
    out.table.rows.push_back(
        {names[i], std::to_string(g.node_count()), std::to_string(cc.size()),
         format_number(g.node_count() ? static_cast<double>(largest) /
                                            g.node_count()
                                      : 0.0),
         format_number(direct),
         format_number(decomposed),
         format_number(decomposed > 0 ? direct / decomposed : INFINITY),
         direct_file == decomposed_file ? "yes" : "no"});
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  return fmt::format("{:.6g}", value);
}

void Table::write_csv(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << csv_field(cells[i]);
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

std::string Table::csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

std::string Table::json() const {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) {
      const std::string& cell = row[i];
      char* end = nullptr;
      const double number = std::strtod(cell.c_str(), &end);
      if (!cell.empty() && end == cell.c_str() + cell.size() &&
          std::isfinite(number)) {
        obj[header[i]] = number;
      } else {
        obj[header[i]] = cell;
      }
    }
    array.push_back(std::move(obj));
  }
  return array.dump(2) + "\n";
}

LoadedGraph load_graph(const std::string& path) {
  const std::string bytes = read_file(path);
  try {
    return {parse_edge_list(bytes), content_hash(bytes)};
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

OrbitPartition compute_orbits(const LoadedGraph& g, const OrbitRequest& request) {
  if (request.cache) {
    if (auto hit = request.cache->load(g.hash, g.graph)) return *hit;
  }
  OrbitPartition orbits = find_symmetric_nodes(g.graph, request.symmetry);
  if (request.cache) request.cache->store(g.hash, g.graph, orbits);
  return orbits;
}

OrbitStats orbit_stats(const Graph& g, const OrbitPartition& orbits) {
  OrbitStats st;
  st.nodes = g.node_count();
  st.edges = g.edge_count();
  st.classes = orbits.class_count();
  st.avg_class_length = st.classes ? avg_class_length(orbits) : 0.0;
  std::size_t largest = 0;
  for (const auto& c : connected_components(g).components) {
    largest = std::max(largest, c.size());
  }
  st.largest_component_prop =
      st.nodes ? static_cast<double>(largest) / st.nodes : 0.0;
  return st;
}

std::string format_orbit_stats(const OrbitStats& st) {
  return fmt::format(
      "nodes={} edges={} classes={} avg_class_length={} "
      "largest_component_prop={} seconds={}",
      st.nodes, st.edges, st.classes, format_number(st.avg_class_length),
      format_number(st.largest_component_prop), format_number(st.seconds));
}

MetricReport evaluate(const EvalInputs& in) {
  if (!in.result && !in.candidates) {
    throw std::invalid_argument("need a result mapping or candidate lists");
  }
  const OrbitPartition& q = *in.source_orbits;
  const OrbitPartition& p = *in.target_orbits;
  MetricReport r;
  r.source_nodes = q.node_count();
  r.source_classes = q.class_count();
  r.target_nodes = p.node_count();
  r.target_classes = p.class_count();
  r.avg_class_length_source = avg_class_length(q);
  r.avg_class_length_target = avg_class_length(p);
  if (in.source->edge_count() + in.target->edge_count() > 0) {
    r.interop = interop(*in.source, *in.target, *in.benchmark);
  }
  if (in.result) {
    const NodeMapping& result = *in.result;
    if (result.empty()) throw UndefinedMetric("empty result mapping");
    // Only the submitted pairs are scored; callers exclude anchors or gap
    // nodes by leaving them out of the result.
    std::vector<std::pair<NodeId, NodeId>> restricted;
    for (const auto& [s, t] : result.pairs()) {
      auto expected = in.benchmark->target_of(s);
      if (!expected) {
        throw DataError("result maps source '" + in.source->label(s) +
                        "', which the benchmark does not cover");
      }
      restricted.emplace_back(s, *expected);
    }
    NodeMapping bench(std::move(restricted), MappingRole::kBenchmark,
                      q.node_count(), p.node_count());
    ClassMapping ecm = compute_ecm(q, p, *in.benchmark);
    SnacResult s = snac_detailed(result, ecm, q, p, in.snac);
    r.snac = s.score;
    r.unmapped_pairs = s.unmapped;
    r.result_pairs = s.pairs;
    r.ac = accuracy(result, bench);
  }
  if (in.candidates) {
    for (int k : in.ks) {
      r.precision_at_k[k] = precision_at_k(*in.candidates, *in.benchmark, k);
    }
    r.map_score = map_score(*in.candidates, *in.benchmark);
  }
  return r;
}

namespace {

struct ReportField {
  std::string name;
  std::optional<double> value;
  bool integral = false;
};

std::vector<ReportField> report_fields(const MetricReport& r) {
  std::vector<ReportField> f;
  f.push_back({"snac", r.snac});
  f.push_back({"ac", r.ac});
  for (const auto& [k, v] : r.precision_at_k) {
    f.push_back({fmt::format("precision_at_{}", k), v});
  }
  f.push_back({"map", r.map_score});
  f.push_back({"interop", r.interop});
  f.push_back({"avg_class_length_source", r.avg_class_length_source});
  f.push_back({"avg_class_length_target", r.avg_class_length_target});
  f.push_back({"result_pairs", static_cast<double>(r.result_pairs), true});
  f.push_back({"unmapped_pairs", static_cast<double>(r.unmapped_pairs), true});
  f.push_back({"source_nodes", static_cast<double>(r.source_nodes), true});
  f.push_back({"source_classes", static_cast<double>(r.source_classes), true});
  f.push_back({"target_nodes", static_cast<double>(r.target_nodes), true});
  f.push_back({"target_classes", static_cast<double>(r.target_classes), true});
  return f;
}

std::string field_text(const ReportField& f) {
  if (!f.value) return "";
  if (f.integral) return fmt::format("{}", static_cast<long long>(*f.value));
  return format_number(*f.value);
}

}  // namespace

void write_report_text(const MetricReport& report, std::ostream& out) {
  for (const ReportField& f : report_fields(report)) {
    if (f.value) out << f.name << ": " << field_text(f) << '\n';
  }
}

Table report_table(const MetricReport& report) {
  Table t;
  t.rows.emplace_back();
  for (const ReportField& f : report_fields(report)) {
    t.header.push_back(f.name);
    t.rows[0].push_back(field_text(f));
  }
  return t;
}

std::string report_json(const MetricReport& report) {
  nlohmann::ordered_json obj;
  for (const ReportField& f : report_fields(report)) {
    if (!f.value) {
      obj[f.name] = nullptr;
    } else if (f.integral) {
      obj[f.name] = static_cast<long long>(*f.value);
    } else {
      obj[f.name] = *f.value;
    }
  }
  return obj.dump(2) + "\n";
}

std::string_view kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kBasicAbility: return "basic-ability";
    case ExperimentKind::kStability: return "stability";
    case ExperimentKind::kStats: return "stats";
    case ExperimentKind::kAppendixTiming: return "appendix-timing";
  }
  return "";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) {
  for (ExperimentKind k :
       {ExperimentKind::kBasicAbility, ExperimentKind::kStability,
        ExperimentKind::kStats, ExperimentKind::kAppendixTiming}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument(what);
  };
  if (seeds < 1) fail("need at least one seed");
  if (repeats < 1) fail("need at least one timing repeat");
  if (distinct < 1) fail("need at least one distinct component");
  if (components < 0) fail("component count must be non-negative");
  if (workers < 0) fail("worker count must be non-negative");
  if (generator) generator->validate();
  const bool has_graphs = !datasets.empty() || generator.has_value();
  switch (kind) {
    case ExperimentKind::kBasicAbility:
      if (!has_graphs) fail("basic-ability needs datasets or a generator");
      if (sweep.empty()) fail("basic-ability needs shuffle ratios");
      for (double r : sweep) {
        if (!(r >= 0.0 && r <= 1.0)) fail("shuffle ratios must lie in [0, 1]");
      }
      break;
    case ExperimentKind::kStability:
      if (!has_graphs) fail("stability needs datasets or a generator");
      if (sweep.empty()) fail("stability needs twin ratios");
      for (double r : sweep) {
        if (!(r >= 0.0 && r <= 10.0)) fail("twin ratios must lie in [0, 10]");
      }
      if (x_values.empty()) fail("stability needs recognition probabilities");
      for (double x : x_values) {
        if (!(x >= 0.0 && x <= 1.0)) fail("x values must lie in [0, 1]");
      }
      break;
    case ExperimentKind::kStats:
      if (datasets.empty()) fail("stats needs at least one dataset");
      break;
    case ExperimentKind::kAppendixTiming:
      if (components > 0 && !generator) {
        fail("generated components need a generator");
      }
      if (datasets.empty() && components == 0) {
        fail("appendix-timing needs datasets or generated components");
      }
      break;
  }
}

ExperimentSpec ExperimentSpec::from_json(std::string_view text) {
  ExperimentSpec spec;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("spec must be an object");
    for (const auto& [key, value] : j.items()) {
      if (key == "kind") {
        auto k = parse_kind(value.get<std::string>());
        if (!k) throw std::invalid_argument("unknown experiment kind");
        spec.kind = *k;
      } else if (key == "datasets") {
        spec.datasets = value.get<std::vector<std::string>>();
      } else if (key == "generator") {
        GeneratorConfig g;
        g.n = value.at("n").get<int>();
        g.p = value.at("p").get<double>();
        g.seed = value.value("seed", std::uint64_t{1});
        spec.generator = g;
      } else if (key == "sweep") {
        spec.sweep = value.get<std::vector<double>>();
      } else if (key == "x_values") {
        spec.x_values = value.get<std::vector<double>>();
      } else if (key == "seeds") {
        spec.seeds = value.get<int>();
      } else if (key == "base_seed") {
        spec.base_seed = value.get<std::uint64_t>();
      } else if (key == "components") {
        spec.components = value.get<int>();
      } else if (key == "distinct") {
        spec.distinct = value.get<int>();
      } else if (key == "repeats") {
        spec.repeats = value.get<int>();
      } else if (key == "workers") {
        spec.workers = value.get<int>();
      } else if (key == "output") {
        spec.output = value.get<std::string>();
      } else {
        throw std::invalid_argument("unknown spec key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ExperimentKind::kBasicAbility: return run_basic_ability(spec);
    case ExperimentKind::kStability: return run_stability(spec);
    case ExperimentKind::kStats: return run_stats(spec);
    case ExperimentKind::kAppendixTiming: return run_appendix_timing(spec);
  }
  return {};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ a) ^ (b * 0x2545f4914f6cdd1dULL));
}

}  // namespace snac
