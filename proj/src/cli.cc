// Copyright 2026 The slicesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slicesim/cli.h"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "slicesim/circuit.h"
#include "slicesim/errors.h"
#include "slicesim/fidelity.h"
#include "slicesim/formats.h"
#include "slicesim/oracle.h"
#include "slicesim/pipeline.h"
#include "slicesim/sampler.h"
#include "slicesim/tensornet.h"
#include "slicesim/treeopt.h"
#include "slicesim/xeb.h"

namespace slicesim {

namespace {

using Json = nlohmann::ordered_json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string format = "text";
  std::string manifest;
};

struct PlannerOptions {
  double budget = 1ull << 30;
  std::size_t min_sliced = 0;
  std::size_t anneal_steps = 2000;
  std::size_t restarts = 1;
  bool no_merge = false;

  PlannerConfig config(std::uint64_t seed) const {
    PlannerConfig c;
    c.memory_budget_bytes = budget;
    c.min_sliced = min_sliced;
    c.anneal_steps = anneal_steps;
    c.restarts = restarts;
    c.seed = seed;
    return c;
  }
  NetworkOptions network() const {
    NetworkOptions n;
    n.merge_diagonal = !no_merge;
    n.memory_budget_bytes = budget;
    return n;
  }
};

void add_planner_options(CLI::App* app, PlannerOptions& p) {
  app->add_option("--budget", p.budget, "Memory budget in bytes")->check(CLI::PositiveNumber);
  app->add_option("--min-sliced", p.min_sliced, "Slice at least this many legs");
  app->add_option("--anneal-steps", p.anneal_steps, "Annealing steps per run");
  app->add_option("--restarts", p.restarts, "Independent annealing runs")->check(CLI::PositiveNumber);
  app->add_flag("--no-merge-diagonal", p.no_merge, "Keep diagonal gates as rank-2k tensors");
}

// Collects digests of everything read and written for the run manifest.
class Run {
 public:
  Run(std::string command, const GlobalOptions& g, std::ostream& out)
      : command_(std::move(command)), g_(g), out_(out), start_(std::chrono::steady_clock::now()) {}

  std::string read(const std::string& path) {
    std::string text = read_text_file(path);
    inputs_[path] = hex64(fnv1a(text));
    return text;
  }
  Circuit circuit(const std::string& path) {
    const std::string text = read(path);
    return parse_circuit(text);
  }
  void write(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
      out_ << content;
      outputs_["stdout"] = hex64(fnv1a(content));
      return;
    }
    write_text_file_atomic(path, content);
    outputs_[path] = hex64(fnv1a(content));
    if (first_output_.empty()) first_output_ = path;
  }
  void config(const std::string& key, Json value) { config_[key] = std::move(value); }

  void report(const Json& r) {
    std::string text;
    if (g_.format == "json") {
      text = r.dump(2) + "\n";
    } else {
      for (const auto& [k, v] : r.items()) {
        text += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
      }
    }
    out_ << text;
    outputs_["report"] = hex64(fnv1a(text));
  }

  void finish(std::ostream& err) {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    Json m;
    m["command"] = command_;
    m["config"] = config_;
    m["inputs"] = inputs_;
    m["seed"] = g_.seed;
    m["threads"] = g_.threads;
    m["versions"] = Json{{"slicesim", kVersion}, {"compiler", __VERSION__}};
    m["timing"] = Json{{"wall_seconds", seconds}};
    m["outputs"] = outputs_;
    std::string path = g_.manifest;
    if (path.empty() && !first_output_.empty()) path = first_output_ + ".manifest.json";
    if (path.empty()) {
      err << m.dump() << "\n";
    } else {
      write_text_file_atomic(path, m.dump(2) + "\n");
    }
  }

 private:
  std::string command_;
  const GlobalOptions& g_;
  std::ostream& out_;
  std::chrono::steady_clock::time_point start_;
  Json config_ = Json::object();
  Json inputs_ = Json::object();
  Json outputs_ = Json::object();
  std::string first_output_;
};

VertexSet parse_vertex_list(const std::string& list) {
  VertexSet s;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InputError("bad vertex id '" + item + "'");
    s.insert(VertexId{static_cast<std::uint32_t>(v)});
  }
  if (s.empty()) throw InputError("empty vertex list");
  return s;
}

Json cost_json(const ContractionCost& c) {
  return Json{{"multiplications_per_slice", c.multiplications_per_slice},
              {"slice_count", c.slice_count},
              {"total_multiplications", c.total_multiplications()},
              {"flops", c.flops()},
              {"peak_bytes", c.peak_bytes}};
}

OutputSpec spec_from_options(const Circuit& c, const std::string& pattern, const std::string& bitstring,
                             std::size_t batch_qubits, const PlannerConfig& planner,
                             const NetworkOptions& network) {
  if (!pattern.empty() && !bitstring.empty()) throw InputError("give either --pattern or --bitstring");
  OutputSpec spec;
  if (!bitstring.empty()) {
    spec = OutputSpec::closed(bitstring);
  } else if (!pattern.empty()) {
    spec = OutputSpec::from_pattern(pattern);
  } else if (batch_qubits > 0) {
    const auto free = choose_free_outputs(c, batch_qubits, planner, network);
    std::map<int, int> fixed;
    for (int q = 0; q < c.num_qubits(); ++q) {
      if (std::find(free.begin(), free.end(), q) == free.end()) fixed[q] = 0;
    }
    spec = OutputSpec::batch(c.num_qubits(), fixed, free);
  } else {
    spec = OutputSpec::closed(std::string(c.num_qubits(), '0'));
  }
  if (spec.num_qubits() != c.num_qubits()) throw InputError("output pattern length differs from qubit count");
  return spec;
}

// Loads --plan if given (checking it fits the network), else plans afresh.
ContractionTree load_or_plan(Run& run, const std::string& plan_path, const TensorNetwork& net,
                             const PlannerConfig& planner) {
  if (plan_path.empty()) return plan_contraction(net, planner).tree;
  const ParsedPlan parsed = parse_plan(run.read(plan_path));
  if (parsed.network_hash != net.structure_hash()) {
    throw InputError("plan was made for a different network");
  }
  parsed.tree.validate(net);
  return parsed.tree;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tensor-network simulation of random circuits with partial slicing", "slicesim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("slicesim ") + kVersion);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "64-bit seed for all randomness");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--manifest", g.manifest, "Run manifest path");
  std::function<void(Run&)> action;
  std::string command;

  // generate
  RandomCircuitOptions gen;
  std::string coupler = "fsim";
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a seeded random grid circuit");
  generate->add_option("--rows", gen.rows)->check(CLI::PositiveNumber);
  generate->add_option("--cols", gen.cols)->check(CLI::PositiveNumber);
  generate->add_option("--cycles", gen.cycles)->check(CLI::NonNegativeNumber);
  generate->add_option("--coupler", coupler)->check(CLI::IsMember({"fsim", "cz"}));
  generate->add_option("-o,--output", gen_out);
  generate->callback([&] {
    command = "generate";
    action = [&](Run& run) {
      gen.seed = g.seed;
      gen.use_fsim = coupler == "fsim";
      run.config("rows", gen.rows);
      run.config("cols", gen.cols);
      run.config("cycles", gen.cycles);
      run.config("coupler", coupler);
      run.write(gen_out, format_circuit(make_random_circuit(gen)));
    };
  });

  // plan
  std::string circuit_path;
  std::string pattern;
  std::string bitstring;
  std::size_t batch_qubits = 0;
  std::string output;
  PlannerOptions po;
  auto* plan = app.add_subcommand("plan", "Find a contraction tree and sliced legs");
  plan->add_option("circuit", circuit_path)->required();
  plan->add_option("--pattern", pattern, "Output pattern of 0, 1 and * (free)");
  plan->add_option("--bitstring", bitstring);
  plan->add_option("--batch-qubits", batch_qubits, "Free outputs chosen by the cost model");
  plan->add_option("-o,--output", output);
  add_planner_options(plan, po);
  plan->callback([&] {
    command = "plan";
    action = [&](Run& run) {
      const Circuit c = run.circuit(circuit_path);
      const PlannerConfig cfg = po.config(g.seed);
      const OutputSpec spec = spec_from_options(c, pattern, bitstring, batch_qubits, cfg, po.network());
      const TensorNetwork net = build_network(c, spec, po.network());
      const ContractionPlan p = plan_contraction(net, cfg);
      run.config("pattern", spec.pattern());
      run.config("budget", po.budget);
      run.config("min_sliced", po.min_sliced);
      run.config("anneal_steps", po.anneal_steps);
      run.config("restarts", po.restarts);
      run.write(output, format_plan(net, p.tree));
      Json r;
      r["pattern"] = spec.pattern();
      r["cost"] = cost_json(p.cost);
      r["sliced"] = p.tree.sliced();
      run.report(r);
    };
  });

  // norms
  std::string vertices;
  auto* norms = app.add_subcommand("norms", "Compute all slice norms for a vertex set");
  norms->add_option("circuit", circuit_path)->required();
  norms->add_option("--vertices", vertices, "Comma-separated vertex ids")->required();
  norms->add_option("-o,--output", output);
  add_planner_options(norms, po);
  norms->callback([&] {
    command = "norms";
    action = [&](Run& run) {
      const Circuit c = run.circuit(circuit_path);
      const VertexSet s = parse_vertex_list(vertices);
      const NormTable t = compute_norms(c, s, po.config(g.seed), po.network());
      run.config("vertices", vertices);
      run.write(output, format_norm_table(t));
      const NormStatistics st = norm_statistics(t);
      run.report(Json{{"k", t.k()}, {"normalized_stddev", st.normalized_stddev},
                      {"min", st.min}, {"max", st.max}});
    };
  });

  // select-slices
  double fidelity = 1.0;
  std::size_t k_override = 0;
  std::string plan_path;
  auto* select = app.add_subcommand("select-slices", "Choose partially sliced vertices and slices");
  select->add_option("circuit", circuit_path)->required();
  select->add_option("--fidelity", fidelity)->required()->check(CLI::Range(0.0, 1.0));
  select->add_option("--k", k_override, "Number of partially sliced vertices");
  select->add_option("--plan", plan_path, "Contraction plan providing the sliced legs");
  select->add_option("--pattern", pattern);
  select->add_option("--bitstring", bitstring);
  select->add_option("--batch-qubits", batch_qubits);
  select->add_option("-o,--output", output);
  add_planner_options(select, po);
  select->callback([&] {
    command = "select-slices";
    action = [&](Run& run) {
      const Circuit c = run.circuit(circuit_path);
      const PlannerConfig cfg = po.config(g.seed);
      const OutputSpec spec = spec_from_options(c, pattern, bitstring, batch_qubits, cfg, po.network());
      const TensorNetwork net = build_network(c, spec, po.network());
      const ContractionTree tree = load_or_plan(run, plan_path, net, cfg);
      const VertexSet sliced = sliced_vertices(net, tree);
      if (sliced.empty()) throw InputError("the contraction plan slices no legs");
      std::optional<std::size_t> k;
      if (k_override > 0) k = k_override;
      const SlicePlan sp = select_partial_slices(c, sliced, fidelity, cfg, k, po.network());
      run.config("fidelity", fidelity);
      run.config("k", k_override);
      run.config("pattern", spec.pattern());
      run.write(output, format_slice_plan(sp));
      run.report(Json{{"k", sp.k()}, {"accepted", sp.accepted.size()},
                      {"fidelity", sp.achieved}, {"target", sp.target},
                      {"lower_bound", fidelity_lower_bound(sp)}});
    };
  });

  // amplitudes
  std::string slices_path;
  auto* amps = app.add_subcommand("amplitudes", "Compute one amplitude or a batch");
  amps->add_option("circuit", circuit_path)->required();
  amps->add_option("--pattern", pattern);
  amps->add_option("--bitstring", bitstring);
  amps->add_option("--plan", plan_path);
  amps->add_option("--slices", slices_path, "Slice plan from select-slices");
  amps->add_option("-o,--output", output);
  add_planner_options(amps, po);
  amps->callback([&] {
    command = "amplitudes";
    action = [&](Run& run) {
      const Circuit c = run.circuit(circuit_path);
      const PlannerConfig cfg = po.config(g.seed);
      const OutputSpec spec = spec_from_options(c, pattern, bitstring, 0, cfg, po.network());
      const TensorNetwork net = build_network(c, spec, po.network());
      const ContractionTree tree = load_or_plan(run, plan_path, net, cfg);
      ContractOptions copts;
      copts.threads = g.threads;
      copts.memory_budget_bytes = po.budget;
      AmplitudeBatch batch;
      double f = 1.0;
      if (!slices_path.empty()) {
        const SlicePlan sp = parse_slice_plan(run.read(slices_path));
        batch = partial_amplitudes(sp, spec, net, tree, copts);
        f = sp.achieved;
      } else {
        batch = AmplitudeBatch{spec, sliced_contract_sum(net, tree, {}, {0}, copts).data};
      }
      run.config("pattern", spec.pattern());
      run.write(output, format_amplitudes(batch));
      run.report(Json{{"amplitudes", batch.amplitudes.size()}, {"fidelity", f}});
    };
  });

  // sample
  SamplerConfig sc;
  std::size_t batch_size = 64;
  auto* samp = app.add_subcommand("sample", "Frugal rejection sampling over batches");
  samp->add_option("circuit", circuit_path)->required();
  samp->add_option("--num", sc.num_samples)->required();
  samp->add_option("--alpha", sc.alpha);
  samp->add_option("--batch-size", batch_size, "Amplitudes per batch (power of two)");
  samp->add_option("--fidelity", fidelity)->check(CLI::Range(0.0, 1.0));
  samp->add_option("--k", k_override);
  samp->add_flag("!--no-memo", sc.memoize, "Recompute repeated batches");
  samp->add_option("-o,--output", output);
  add_planner_options(samp, po);
  samp->callback([&] {
    command = "sample";
    action = [&](Run& run) {
      const Circuit c = run.circuit(circuit_path);
      if (batch_size == 0 || (batch_size & (batch_size - 1)) != 0) {
        throw InputError("batch size must be a power of two");
      }
      BatchPipelineOptions bo;
      bo.batch_qubits = static_cast<std::size_t>(std::log2(static_cast<double>(batch_size)));
      bo.target_fidelity = fidelity;
      if (k_override > 0) bo.partial_count = k_override;
      const BatchPipeline p = make_batch_pipeline(c, bo, po.config(g.seed), po.network());
      sc.seed = g.seed;
      ContractOptions copts;
      copts.threads = g.threads;
      copts.memory_budget_bytes = po.budget;
      const SampleSet s = sample(p.provider(copts), p.layout, sc);
      const double nb = static_cast<double>(p.layout.batch_count());
      const EpsilonEstimate eps = estimate_epsilon_empirical(s.drawn_masses, sc.alpha, nb);
      const double eps_gamma =
          estimate_epsilon_gamma(static_cast<double>(p.layout.batch_size()), nb, sc.alpha);
      run.config("num", sc.num_samples);
      run.config("alpha", sc.alpha);
      run.config("batch_size", batch_size);
      run.config("fidelity", fidelity);
      run.config("memo", sc.memoize);
      run.write(output, format_samples(s.bitstrings));
      Json r;
      r["m"] = s.bitstrings.size();
      r["alpha"] = sc.alpha;
      r["batches_drawn"] = s.batches_drawn;
      r["batches_evaluated"] = s.batches_evaluated;
      r["acceptance_rate"] = s.acceptance_rate();
      r["epsilon_empirical"] = eps.value;
      r["epsilon_empirical_se"] = eps.standard_error;
      r["epsilon_gamma"] = eps_gamma;
      r["fidelity"] = p.fidelity();
      const auto bound = fidelity_degradation_bound(p.fidelity(), variational_distance_bound(eps.value));
      r["fidelity_bound"] = bound ? Json(*bound) : Json("not applicable");
      run.report(r);
    };
  });

  // xeb
  std::string samples_path;
  std::string probs_path;
  auto* xeb = app.add_subcommand("xeb", "Linear XEB of samples against exact probabilities");
  xeb->add_option("--samples", samples_path)->required();
  xeb->add_option("--probs", probs_path)->required();
  xeb->callback([&] {
    command = "xeb";
    action = [&](Run& run) {
      const auto samples = parse_samples(run.read(samples_path));
      const auto table = parse_probabilities(run.read(probs_path));
      if (samples.empty()) throw InputError("no samples");
      std::map<std::string, double> lookup(table.begin(), table.end());
      std::vector<double> p;
      for (const auto& s : samples) {
        auto it = lookup.find(s);
        if (it == lookup.end()) throw InputError("no probability for bitstring " + s);
        p.push_back(it->second);
      }
      const XebReport r = xeb_fidelity(p, static_cast<int>(samples[0].size()));
      run.report(Json{{"count", r.count}, {"mean_normalized", r.mean_normalized},
                      {"xeb", r.fidelity}, {"standard_error", r.standard_error}});
    };
  });

  // spoof
  SpoofConfig spc;
  double ratio = 0;
  int batch_bits = 0;
  bool with_oracle = false;
  auto* sp = app.add_subcommand("spoof", "Select the largest amplitudes of one batch");
  sp->add_option("circuit", circuit_path)->required();
  sp->add_option("--num", spc.num_bitstrings);
  sp->add_option("--fidelity", spc.fidelity)->check(CLI::Range(0.0, 1.0));
  sp->add_option("--ratio", ratio)->check(CLI::Range(0.0, 1.0));
  sp->add_option("--batch-bits", batch_bits);
  sp->add_flag("--oracle", with_oracle, "Measure XEB with the dense oracle");
  sp->add_option("-o,--output", output);
  add_planner_options(sp, po);
  sp->callback([&] {
    command = "spoof";
    action = [&](Run& run) {
      const Circuit c = run.circuit(circuit_path);
      if (ratio > 0) spc.ratio = ratio;
      if (batch_bits > 0) spc.batch_bits = batch_bits;
      ContractOptions copts;
      copts.threads = g.threads;
      copts.memory_budget_bytes = po.budget;
      const SpoofResult res = spoof(c, spc, po.config(g.seed), copts, po.network());
      run.config("num", spc.num_bitstrings);
      run.config("fidelity", spc.fidelity);
      run.config("ratio", ratio);
      run.config("batch_bits", spc.resolved_batch_bits(c.num_qubits()));
      run.write(output, format_samples(res.bitstrings));
      Json r;
      r["selected"] = res.bitstrings.size();
      r["f"] = res.achieved_fidelity;
      r["r"] = res.ratio;
      r["predicted_xeb"] = expected_spoof_xeb(res.achieved_fidelity, res.ratio);
      if (with_oracle) {
        const auto p = exact_probabilities(c, res.bitstrings);
        r["measured_xeb"] = xeb_fidelity(p, c.num_qubits()).fidelity;
      }
      run.report(r);
    };
  });

  // oracle
  std::size_t oracle_num = 0;
  auto* oracle = app.add_subcommand("oracle", "Dense state-vector reference");
  oracle->require_subcommand(1);
  oracle->fallthrough();
  auto* oprobs = oracle->add_subcommand("probs", "Exact probabilities");
  oprobs->add_option("circuit", circuit_path)->required();
  oprobs->add_option("--samples", samples_path, "Only these bitstrings");
  oprobs->add_option("-o,--output", output);
  oprobs->callback([&] {
    command = "oracle probs";
    action = [&](Run& run) {
      const Circuit c = run.circuit(circuit_path);
      std::vector<std::string> bits;
      std::vector<double> p;
      if (samples_path.empty()) {
        p = exact_distribution(c);
        for (std::size_t i = 0; i < p.size(); ++i) bits.push_back(index_to_bitstring(i, c.num_qubits()));
      } else {
        bits = parse_samples(run.read(samples_path));
        p = exact_probabilities(c, bits);
      }
      run.write(output, format_probabilities(bits, p));
    };
  });
  auto* osample = oracle->add_subcommand("sample", "Exact sampling");
  osample->add_option("circuit", circuit_path)->required();
  osample->add_option("--num", oracle_num)->required();
  osample->add_option("-o,--output", output);
  osample->callback([&] {
    command = "oracle sample";
    action = [&](Run& run) {
      const Circuit c = run.circuit(circuit_path);
      run.config("num", oracle_num);
      run.write(output, format_samples(exact_sample(c, oracle_num, g.seed)));
    };
  });

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "Porter-Thomas and slice-norm statistics");
  diag->add_option("circuit", circuit_path)->required();
  diag->add_option("--batch-size", batch_size);
  diag->add_option("--vertices", vertices, "Also report norm statistics for these vertices");
  diag->add_option("-o,--output", output, "Histogram dump");
  add_planner_options(diag, po);
  diag->callback([&] {
    command = "diagnose";
    action = [&](Run& run) {
      const Circuit c = run.circuit(circuit_path);
      if (batch_size == 0 || (batch_size & (batch_size - 1)) != 0) {
        throw InputError("batch size must be a power of two");
      }
      const int n = c.num_qubits();
      const auto p = exact_distribution(c);
      const int a = std::min(n, static_cast<int>(std::log2(static_cast<double>(batch_size))));
      std::vector<int> aq;
      for (int q = n - a; q < n; ++q) aq.push_back(q);
      const BatchLayout layout(n, aq);
      std::vector<double> masses(layout.batch_count(), 0.0);
      for (std::uint64_t j = 0; j < layout.batch_count(); ++j) {
        for (std::uint64_t i = 0; i < layout.batch_size(); ++i) masses[j] += p[layout.index(j, i)];
      }
      const auto rep = porter_thomas_diagnostics(p, layout.batch_count() > 1 ? masses : std::vector<double>{},
                                                 n, static_cast<double>(layout.batch_size()));
      Json r;
      r["ks_exponential"] = rep.exponential.statistic;
      r["ks_exponential_p"] = rep.exponential.p_value;
      if (rep.gamma) {
        r["ks_gamma"] = rep.gamma->statistic;
        r["ks_gamma_p"] = rep.gamma->p_value;
      }
      if (!vertices.empty()) {
        const NormTable t = compute_norms(c, parse_vertex_list(vertices), po.config(g.seed), po.network());
        const NormStatistics st = norm_statistics(t);
        r["norm_stddev"] = st.normalized_stddev;
        r["norm_min"] = st.min;
        r["norm_max"] = st.max;
      }
      std::string dump = "# bitstring probabilities x 2^n\n" + rep.bitstring_histogram.format();
      if (rep.batch_histogram) dump += "# batch probabilities x N_B\n" + rep.batch_histogram->format();
      if (!output.empty()) run.write(output, dump);
      run.report(r);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!action) return kExitUsage;
  try {
    Run run(command, g, out);
    action(run);
    run.finish(err);
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace slicesim
