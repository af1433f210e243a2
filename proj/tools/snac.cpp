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

// snac: symmetric-node-aware evaluation of network alignments.
//
//   snac orbits GRAPH [-o FILE] [--mode decomposed|direct]
//   snac eval --source G1 --target G2 --benchmark B (--result R | --candidates C)
//   snac stats GRAPH...
//   snac experiment (--spec FILE.json | --kind K ...)
//   snac synth {gilbert,twins,shuffle,remove-edges,aligner} ...
//
// Exit status: 0 success, 1 usage, 2 parse or data error, 3 undefined metric.

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snac/error.hpp"
#include "snac/harness.hpp"
#include "snac/io.hpp"
#include "snac/parallel.hpp"

namespace {

using namespace snac;

enum Exit { kOk = 0, kUsage = 1, kData = 2, kUndefined = 3 };

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::optional<OrbitCache> make_cache(const std::string& dir) {
  if (dir.empty()) return std::nullopt;
  return OrbitCache(dir);
}

struct Globals {
  int workers = 0;
  std::string cache_dir;
};

// ---- orbits -------------------------------------------------------------

struct OrbitsArgs {
  std::string graph, out, mode = "decomposed", layout = "classes";
};

int cmd_orbits(const OrbitsArgs& a, const Globals& g) {
  LoadedGraph graph = load_graph(a.graph);
  auto cache = make_cache(g.cache_dir);
  OrbitRequest request{{a.mode == "decomposed", g.workers},
                       cache ? &*cache : nullptr};
  const auto start = std::chrono::steady_clock::now();
  OrbitPartition orbits = compute_orbits(graph, request);
  OrbitStats stats = orbit_stats(graph.graph, orbits);
  stats.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  std::ostringstream text;
  if (a.layout == "table") {
    write_orbit_table(orbits, graph.graph, text);
  } else {
    write_orbits(orbits, graph.graph, text);
  }
  emit(a.out, text.str());
  (a.out.empty() ? std::cerr : std::cout) << format_orbit_stats(stats) << '\n';
  return kOk;
}

// ---- eval ---------------------------------------------------------------

struct EvalArgs {
  std::string source, target, benchmark, result, candidates;
  std::string source_orbits, target_orbits;
  std::vector<int> ks;
  bool weighted = false;
  std::string format = "text";
  std::string out;
};

OrbitPartition orbits_for(const LoadedGraph& g, const std::string& file,
                          const Globals& globals) {
  if (!file.empty()) {
    std::istringstream in(read_file(file));
    try {
      return parse_orbits(in, g.graph);
    } catch (const ParseError& e) {
      throw DataError(file + ": " + e.what());
    }
  }
  auto cache = make_cache(globals.cache_dir);
  return compute_orbits(g, {{true, globals.workers}, cache ? &*cache : nullptr});
}

int cmd_eval(const EvalArgs& a, const Globals& globals) {
  if (a.result.empty() && a.candidates.empty()) {
    throw CLI::ValidationError("eval", "need --result or --candidates");
  }
  LoadedGraph source = load_graph(a.source);
  LoadedGraph target = load_graph(a.target);
  const OrbitPartition q = orbits_for(source, a.source_orbits, globals);
  const OrbitPartition p = orbits_for(target, a.target_orbits, globals);
  const NodeMapping benchmark = read_mapping(a.benchmark, source.graph,
                                             target.graph, MappingRole::kBenchmark);
  std::optional<NodeMapping> result;
  std::optional<RankedCandidates> candidates;
  if (!a.result.empty()) {
    result = read_mapping(a.result, source.graph, target.graph,
                          MappingRole::kResult);
  }
  if (!a.candidates.empty()) {
    candidates = read_candidates(a.candidates, source.graph, target.graph);
  }
  EvalInputs in;
  in.source = &source.graph;
  in.target = &target.graph;
  in.source_orbits = &q;
  in.target_orbits = &p;
  in.benchmark = &benchmark;
  in.result = result ? &*result : nullptr;
  in.candidates = candidates ? &*candidates : nullptr;
  in.ks = a.ks.empty() ? std::vector<int>{1} : a.ks;
  in.snac.weighted_ecm = a.weighted;
  MetricReport report = evaluate(in);
  if (a.format == "csv") {
    emit(a.out, report_table(report).csv());
  } else if (a.format == "json") {
    emit(a.out, report_json(report));
  } else {
    std::ostringstream text;
    write_report_text(report, text);
    emit(a.out, text.str());
  }
  return kOk;
}

// ---- stats / experiment -------------------------------------------------

void emit_table(const Table& t, const std::string& format,
                const std::string& out) {
  emit(out, format == "json" ? t.json() : t.csv());
}

int report_errors(const std::vector<std::string>& errors) {
  for (const auto& e : errors) std::cerr << "snac: " << e << '\n';
  return errors.empty() ? kOk : kData;
}

struct StatsArgs {
  std::vector<std::string> graphs;
  std::string format = "csv", out;
};

int cmd_stats(const StatsArgs& a, const Globals& g) {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::kStats;
  spec.datasets = a.graphs;
  spec.workers = g.workers;
  ExperimentResult r = run_experiment(spec);
  emit_table(r.table, a.format, a.out);
  return report_errors(r.errors);
}

struct ExperimentArgs {
  std::string spec_path, kind, format = "csv";
  std::vector<std::string> datasets;
  std::optional<int> gen_n;
  double gen_p = 0.0;
  std::vector<double> sweep, xs;
  int seeds = 1, components = 0, distinct = 1, repeats = 3;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_experiment(const ExperimentArgs& a, const Globals& g) {
  ExperimentSpec spec;
  if (!a.spec_path.empty()) {
    spec = ExperimentSpec::from_json(read_file(a.spec_path));
    if (!a.out.empty()) spec.output = a.out;
  } else {
    auto kind = parse_kind(a.kind);
    if (!kind) throw std::invalid_argument("unknown --kind '" + a.kind + "'");
    spec.kind = *kind;
    spec.datasets = a.datasets;
    if (a.gen_n) spec.generator = GeneratorConfig{*a.gen_n, a.gen_p, a.seed};
    spec.sweep = a.sweep;
    if (!a.xs.empty()) spec.x_values = a.xs;
    spec.seeds = a.seeds;
    spec.base_seed = a.seed;
    spec.components = a.components;
    spec.distinct = a.distinct;
    spec.repeats = a.repeats;
    spec.output = a.out;
  }
  if (spec.workers == 1 || a.spec_path.empty()) spec.workers = g.workers;
  ExperimentResult r = run_experiment(spec);
  emit_table(r.table, a.format, spec.output);
  return report_errors(r.errors);
}

// ---- synth --------------------------------------------------------------

struct SynthArgs {
  int n = 0;
  double p = 0.0, ratio = 0.0, x = 1.0;
  std::uint64_t seed = 1;
  std::string graph, out, target_out, benchmark_out, result_out;
  std::string source, target, benchmark;
};

int synth_gilbert(const SynthArgs& a) {
  emit(a.out, serialize_edge_list(gilbert_graph({a.n, a.p, a.seed})));
  return kOk;
}

int synth_twins(const SynthArgs& a) {
  emit(a.out, serialize_edge_list(inject_twins(load_graph(a.graph).graph,
                                               a.ratio, a.seed)));
  return kOk;
}

int synth_remove(const SynthArgs& a) {
  emit(a.out, serialize_edge_list(remove_edges(load_graph(a.graph).graph,
                                               a.p, a.seed)));
  return kOk;
}

int synth_shuffle(const SynthArgs& a) {
  Graph g = load_graph(a.graph).graph;
  ShuffledCopy c = shuffle_labels(g, a.ratio, a.seed);
  // The copy gets fresh labels so the two graphs do not share names.
  std::vector<std::string> labels(c.target.node_count());
  for (NodeId v = 0; v < c.target.node_count(); ++v) {
    labels[v] = "t" + std::to_string(v);
  }
  Graph target(c.target.node_count(), c.target.edges(), labels);
  emit(a.target_out, serialize_edge_list(target));
  std::ostringstream bench, result;
  write_mapping(c.benchmark, g, target, bench);
  write_mapping(c.result, g, target, result);
  write_file(a.benchmark_out, bench.str());
  write_file(a.result_out, result.str());
  return kOk;
}

int synth_aligner(const SynthArgs& a, const Globals& globals) {
  LoadedGraph source = load_graph(a.source);
  LoadedGraph target = load_graph(a.target);
  const OrbitPartition q = orbits_for(source, "", globals);
  const OrbitPartition p = orbits_for(target, "", globals);
  const NodeMapping benchmark = read_mapping(a.benchmark, source.graph,
                                             target.graph, MappingRole::kBenchmark);
  const ClassMapping ecm = compute_ecm(q, p, benchmark);
  AlignerOutcome o = simulated_aligner(q, p, benchmark, ecm, {a.x, a.seed});
  std::ostringstream text;
  write_mapping(o.mapping, source.graph, target.graph, text);
  emit(a.out, text.str());
  std::cerr << "demoted=" << o.demoted << " forced=" << o.forced << '\n';
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Symmetric-node-aware evaluation of network alignment"};
  app.require_subcommand(1);
  Globals globals;
  globals.workers = default_worker_count();
  app.add_option("--workers", globals.workers,
                 "Worker threads (default: $SNAC_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", globals.cache_dir,
                 "Directory for cached orbit files, keyed by edge-list hash");

  int status = kOk;

  OrbitsArgs orbits;
  auto* o = app.add_subcommand("orbits", "Compute symmetric-node classes");
  o->add_option("graph", orbits.graph, "Edge list")->required();
  o->add_option("-o,--output", orbits.out, "Orbit file (default: stdout)");
  o->add_option("--mode", orbits.mode, "decomposed or direct")
      ->check(CLI::IsMember({"decomposed", "direct"}));
  o->add_option("--layout", orbits.layout,
                "classes (one line per class) or table (label class)")
      ->check(CLI::IsMember({"classes", "table"}));
  o->callback([&] { status = cmd_orbits(orbits, globals); });

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Score a result mapping");
  e->add_option("--source", eval.source, "Source edge list")->required();
  e->add_option("--target", eval.target, "Target edge list")->required();
  e->add_option("--benchmark", eval.benchmark, "Benchmark mapping")->required();
  e->add_option("--result", eval.result, "Result mapping");
  e->add_option("--candidates", eval.candidates, "Ranked candidate lists");
  e->add_option("--source-orbits", eval.source_orbits, "Precomputed orbit file");
  e->add_option("--target-orbits", eval.target_orbits, "Precomputed orbit file");
  e->add_option("--k", eval.ks, "Precision@k cut-off (repeatable)")
      ->check(CLI::PositiveNumber);
  e->add_flag("--weighted-ecm", eval.weighted,
              "Experimental fractional credit by class vote share");
  e->add_option("--format", eval.format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  e->add_option("-o,--output", eval.out, "Output file (default: stdout)");
  e->callback([&] { status = cmd_eval(eval, globals); });

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Class statistics per dataset");
  s->add_option("graphs", stats.graphs, "Edge lists")->required();
  s->add_option("--format", stats.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  s->add_option("-o,--output", stats.out, "Output file (default: stdout)");
  s->callback([&] { status = cmd_stats(stats, globals); });

  ExperimentArgs exp;
  auto* x = app.add_subcommand("experiment", "Run an experiment sweep");
  x->add_option("--spec", exp.spec_path, "JSON experiment spec");
  x->add_option("--kind", exp.kind,
                "basic-ability, stability, stats or appendix-timing");
  x->add_option("--dataset", exp.datasets, "Edge list (repeatable)");
  x->add_option("--gen-n", exp.gen_n, "Gilbert generator node count");
  x->add_option("--gen-p", exp.gen_p, "Gilbert generator edge probability");
  x->add_option("--sweep", exp.sweep, "Shuffle or twin ratios")->delimiter(',');
  x->add_option("--x", exp.xs, "Recognition probabilities")->delimiter(',');
  x->add_option("--seeds", exp.seeds, "Seeds per sweep point");
  x->add_option("--seed", exp.seed, "Base seed");
  x->add_option("--components", exp.components, "Generated components");
  x->add_option("--distinct", exp.distinct, "Distinct generated components");
  x->add_option("--repeats", exp.repeats, "Timing repeats");
  x->add_option("--format", exp.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  x->add_option("-o,--output", exp.out, "Output file (default: stdout)");
  x->callback([&] {
    if (exp.spec_path.empty() && exp.kind.empty()) {
      throw CLI::ValidationError("experiment", "need --spec or --kind");
    }
    status = cmd_experiment(exp, globals);
  });

  SynthArgs syn;
  auto* y = app.add_subcommand("synth", "Generate synthetic inputs");
  y->require_subcommand(1);
  auto* gil = y->add_subcommand("gilbert", "G(n, p) random graph");
  gil->add_option("--n", syn.n)->required();
  gil->add_option("--p", syn.p)->required();
  gil->add_option("--seed", syn.seed);
  gil->add_option("-o,--output", syn.out);
  gil->callback([&] { status = synth_gilbert(syn); });
  auto* tw = y->add_subcommand("twins", "Inject false twins");
  tw->add_option("--graph", syn.graph)->required();
  tw->add_option("--ratio", syn.ratio)->required();
  tw->add_option("--seed", syn.seed);
  tw->add_option("-o,--output", syn.out);
  tw->callback([&] { status = synth_twins(syn); });
  auto* rm = y->add_subcommand("remove-edges", "Drop edges at random");
  rm->add_option("--graph", syn.graph)->required();
  rm->add_option("--p", syn.p)->required();
  rm->add_option("--seed", syn.seed);
  rm->add_option("-o,--output", syn.out);
  rm->callback([&] { status = synth_remove(syn); });
  auto* sh = y->add_subcommand("shuffle", "Relabeled copy plus deranged result");
  sh->add_option("--graph", syn.graph)->required();
  sh->add_option("--ratio", syn.ratio)->required();
  sh->add_option("--seed", syn.seed);
  sh->add_option("--target-out", syn.target_out)->required();
  sh->add_option("--benchmark-out", syn.benchmark_out)->required();
  sh->add_option("--result-out", syn.result_out)->required();
  sh->callback([&] { status = synth_shuffle(syn); });
  auto* al = y->add_subcommand("aligner", "Simulated aligner result mapping");
  al->add_option("--source", syn.source)->required();
  al->add_option("--target", syn.target)->required();
  al->add_option("--benchmark", syn.benchmark)->required();
  al->add_option("--x", syn.x)->required();
  al->add_option("--seed", syn.seed);
  al->add_option("-o,--output", syn.out);
  al->callback([&] { status = synth_aligner(syn, globals); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "snac: " << err.what() << '\n';
    return kUsage;
  } catch (const UndefinedMetric& err) {
    std::cerr << "snac: undefined metric: " << err.what() << '\n';
    return kUndefined;
  } catch (const DataError& err) {
    std::cerr << "snac: " << err.what() << '\n';
    return kData;
  } catch (const std::exception& err) {
    std::cerr << "snac: " << err.what() << '\n';
    return kData;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
