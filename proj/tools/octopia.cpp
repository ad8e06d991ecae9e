// octopia: run, compare and inspect pub/sub overlay scenarios.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "octopia/graph.hpp"
#include "octopia/presets.hpp"
#include "octopia/scenario.hpp"
#include "octopia/scot.hpp"
#include "octopia/trace.hpp"

namespace {

using namespace octopia;

struct Source {
  std::string config;
  std::string preset;
  std::optional<std::string> routing;
  std::optional<std::uint64_t> seed;
};

void add_source(CLI::App* cmd, Source& s) {
  auto* cfg = cmd->add_option("-c,--config", s.config, "scenario JSON file");
  auto* pre = cmd->add_option("-p,--preset", s.preset, "built-in scenario (fig5 fig6 fig7a-d fig8 burst)");
  cfg->excludes(pre);
  cmd->add_option("-r,--routing", s.routing, "override routing: snr, idr, tid-static");
  cmd->add_option("-s,--seed", s.seed, "override the seed");
}

ScenarioConfig resolve(const Source& s) {
  ScenarioConfig c;
  if (!s.config.empty()) {
    c = load_config(s.config);
  } else if (!s.preset.empty()) {
    c = scenario_preset(s.preset);
  } else {
    throw ConfigError("give --config or --preset");
  }
  if (s.routing) c.routing = parse_routing_mode(*s.routing);
  if (s.seed) c.seed = *s.seed;
  return c;
}

void print_run(const ScenarioResult& r) {
  const auto& m = r.report;
  std::cout << fmt::format("{} [{} seed={}] ims={} deliveries={} srt={} prt={} end={}ms\n", r.config.name,
                           to_string(r.config.routing), r.config.seed, m.total_ims(), m.deliveries.size(),
                           m.srt_total(), m.prt_total(), static_cast<double>(m.end_time) / 1000.0);
}

int cmd_run(const Source& src, const std::string& out, unsigned seeds, unsigned threads,
            const std::string& trace_path, int verbosity) {
  const auto base = resolve(src);
  if (seeds <= 1) {
    std::ofstream trace_file;
    std::unique_ptr<JsonLinesTrace> trace;
    if (!trace_path.empty()) {
      trace_file.open(trace_path);
      if (!trace_file) throw std::runtime_error("cannot open trace file " + trace_path);
      trace = std::make_unique<JsonLinesTrace>(trace_file, verbosity);
    }
    const auto r = run_scenario(base, trace.get());
    write_outputs(out, r);
    print_run(r);
    return 0;
  }
  std::vector<ScenarioConfig> configs;
  for (unsigned i = 0; i < seeds; ++i) {
    auto c = base;
    c.seed = base.seed + i;
    configs.push_back(std::move(c));
  }
  const auto results = run_batch(configs, threads);
  std::filesystem::create_directories(out);
  std::ofstream summary(std::filesystem::path(out) / "summary.csv");
  write_summary_header(summary);
  for (const auto& r : results) {
    write_summary_row(summary, r);
    write_outputs((std::filesystem::path(out) / fmt::format("seed-{}", r.config.seed)).string(), r);
    print_run(r);
  }
  return 0;
}

int cmd_compare(const Source& src, const std::string& a, const std::string& b, const std::string& out) {
  auto ca = resolve(src);
  auto cb = ca;
  ca.routing = parse_routing_mode(a);
  cb.routing = parse_routing_mode(b);
  const auto results = run_batch({ca, cb}, 2);
  const auto cmp = compare_runs(results[0], results[1]);
  if (out.empty()) {
    write_comparison_csv(std::cout, cmp);
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    write_comparison_csv(f, cmp);
  }
  std::cerr << (cmp.delivered_sets_equal ? "delivered sets equal\n" : "delivered sets DIFFER\n");
  return cmp.delivered_sets_equal ? 0 : 1;
}

std::pair<Graph, Graph> factors(const std::string& preset, const std::string& af, const std::string& cf) {
  if (!preset.empty()) return {preset_acyclic_factor(preset), preset_connectivity_factor(preset)};
  if (af.empty() || cf.empty()) throw ConfigError("give --preset or both --af and --cf");
  return {load_graph_file(af), load_graph_file(cf)};
}

int cmd_topology_info(const std::string& preset, const std::string& af, const std::string& cf) {
  const auto [g_af, g_cf] = factors(preset, af, cf);
  const auto topo = ScotTopology::build(g_af, g_cf);
  const auto bounds = connectivity_bounds(g_af, g_cf);
  std::size_t edge = 0;
  for (BrokerIndex b = 0; b < topo.broker_count(); ++b) {
    edge += topo.neighbours(b).broker_class == BrokerClass::Edge;
  }
  std::cout << fmt::format("brokers      {}\n", topo.broker_count());
  std::cout << fmt::format("clusters     {} (|V_af| = {} brokers each)\n", topo.cluster_count(), g_af.order());
  std::cout << fmt::format("regions      {} (|V_cf| = {} brokers each)\n", topo.region_count(), g_cf.order());
  std::cout << fmt::format("aLinks       {}\n", topo.alinks().size());
  std::cout << fmt::format("iLinks       {}\n", topo.ilinks().size());
  std::cout << fmt::format("diam(G_af)   {}\n", topo.diam_af());
  std::cout << fmt::format("diam(SCOT)   {}\n", diameter(topo.overlay()));
  std::cout << fmt::format("kappa        {}\n", bounds.kappa);
  std::cout << fmt::format("lambda       {}\n", bounds.lambda);
  std::cout << fmt::format("edge/inner   {}/{}\n", edge, topo.broker_count() - edge);
  return 0;
}

int cmd_validate(const std::string& config, const std::string& af, const std::string& cf) {
  if (!config.empty()) {
    const auto c = load_config(config);
    build_topology(c);
    std::cout << fmt::format("{}: ok\n", config);
    return 0;
  }
  const auto [g_af, g_cf] = factors("", af, cf);
  const auto violations = validate_factors(g_af, g_cf);
  for (const auto& v : violations) std::cout << fmt::format("violation: {} property: {}\n", to_string(v.property), v.detail);
  if (violations.empty()) std::cout << "factors form a valid SCOT\n";
  return violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OctopiA pub/sub overlay simulator"};
  app.require_subcommand(1);

  Source run_src;
  std::string run_out = "out";
  unsigned seeds = 1;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string trace_path;
  int verbosity = 1;
  auto* run = app.add_subcommand("run", "run one scenario and write CSV outputs");
  add_source(run, run_src);
  run->add_option("-o,--out", run_out, "output directory")->capture_default_str();
  run->add_option("--seeds", seeds, "run this many consecutive seeds")->check(CLI::PositiveNumber);
  run->add_option("-j,--threads", threads, "worker threads for --seeds")->check(CLI::PositiveNumber);
  run->add_option("--trace", trace_path, "write a JSON-lines trace here");
  run->add_option("-v,--verbosity", verbosity, "trace verbosity 0-2")->check(CLI::Range(0, 2))->capture_default_str();

  Source cmp_src;
  std::string mode_a = "snr";
  std::string mode_b = "idr";
  std::string cmp_out;
  auto* compare = app.add_subcommand("compare", "run one workload under two routing modes");
  add_source(compare, cmp_src);
  compare->add_option("-a", mode_a, "first routing mode")->capture_default_str();
  compare->add_option("-b", mode_b, "second routing mode")->capture_default_str();
  compare->add_option("-o,--out", cmp_out, "comparison CSV (default stdout)");

  std::string info_preset;
  std::string info_af;
  std::string info_cf;
  auto* info = app.add_subcommand("topology-info", "print counts, diameter and connectivity of a SCOT");
  info->add_option("-p,--preset", info_preset, "fig1, fig3, fig7 or fig10");
  info->add_option("--af", info_af, "acyclic factor file");
  info->add_option("--cf", info_cf, "connectivity factor file");

  std::string val_config;
  std::string val_af;
  std::string val_cf;
  auto* validate = app.add_subcommand("validate", "check a scenario file or a pair of factor files");
  validate->add_option("-c,--config", val_config, "scenario JSON file");
  validate->add_option("--af", val_af, "acyclic factor file");
  validate->add_option("--cf", val_cf, "connectivity factor file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_src, run_out, seeds, threads, trace_path, verbosity);
    if (*compare) return cmd_compare(cmp_src, mode_a, mode_b, cmp_out);
    if (*info) return cmd_topology_info(info_preset, info_af, info_cf);
    if (*validate) return cmd_validate(val_config, val_af, val_cf);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
