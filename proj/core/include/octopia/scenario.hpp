#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "octopia/broker.hpp"
#include "octopia/metrics.hpp"
#include "octopia/scot.hpp"
#include "octopia/simulator.hpp"
#include "octopia/workload.hpp"

namespace octopia {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A client placed by hand: optionally advertises one filter and holds any
/// number of subscriptions.
struct ScriptedClient {
  std::string name;
  std::string broker;  // "(a,0)"
  std::optional<std::string> advertise;
  std::vector<std::string> subscribe;
};

struct ScriptedNotification {
  std::string publisher;
  SimTime at = 0;  // offset into the publishing phase
  std::string payload;
};

struct ScriptedInjection {
  std::string from;
  std::string to;
  SimTime start = 0;  // offsets into the publishing phase
  SimTime end = 0;
  double rate = 0.01;
  std::size_t backlog = 0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  // Topology: a preset name, or two graph files.
  std::string preset = "fig3";
  std::string af_file;
  std::string cf_file;

  RoutingMode routing = RoutingMode::Snr;
  std::uint64_t seed = 1;
  double tau = 10.0;
  SimTime t_w = 50 * kMillisecond;
  LinkModel links;
  SimTime phase_gap = 10 * kMillisecond;
  std::uint64_t event_budget = 20'000'000;
  bool keep_routing_log = false;

  std::optional<WorkloadSpec> workload;
  std::optional<BurstSpec> burst;
  std::vector<ScriptedClient> clients;
  std::vector<ScriptedNotification> notifications;
  std::vector<ScriptedInjection> congestion;
  std::vector<std::string> watch;
};

/// Parses the JSON scenario format (see docs/config.md). Throws ConfigError
/// naming the offending field.
ScenarioConfig parse_config(std::string_view json_text);
/// Relative factor file paths are resolved against the config file's directory.
ScenarioConfig load_config(const std::string& path);
std::string to_json(const ScenarioConfig& c);

/// Throws ConfigError or TopologyError for an inconsistent config.
ScotTopology build_topology(const ScenarioConfig& c);
void validate_config(const ScenarioConfig& c);

struct PhaseCounts {
  std::string phase;  // "advertise", "subscribe", "publish"
  std::array<std::uint64_t, kMessageKindCount> ims{};
  SimTime start = 0;
  SimTime end = 0;
};

/// One finished run. Owns its topology and simulator so tests can inspect
/// broker tables after the fact.
struct ScenarioResult {
  ScenarioConfig config;
  std::shared_ptr<const ScotTopology> topology;
  std::unique_ptr<Simulator> sim;
  MetricsReport report;
  std::vector<PhaseCounts> phases;
  std::map<std::string, ClientId> clients;  // by name
  std::map<std::string, AdvId> adverts;     // by publisher name
  std::vector<SubId> subscriptions;
  std::string workload_fingerprint;
};

/// Runs advertise, subscribe and publish phases, each to quiescence.
ScenarioResult run_scenario(const ScenarioConfig& c, TraceSink* trace = nullptr);

/// Runs independent scenarios on up to `threads` workers; result order
/// matches input order.
std::vector<ScenarioResult> run_batch(const std::vector<ScenarioConfig>& configs, unsigned threads);

// CSV writers. Column sets are documented in docs/csv.md.
void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const ScenarioResult& r);
void write_tables_csv(std::ostream& out, const ScenarioResult& r);
void write_deliveries_csv(std::ostream& out, const ScenarioResult& r);
void write_queues_csv(std::ostream& out, const ScenarioResult& r);
/// Writes summary.csv, tables.csv, deliveries.csv and queues.csv.
void write_outputs(const std::string& dir, const ScenarioResult& r);

struct Comparison {
  bool delivered_sets_equal = false;
  std::vector<std::string> lines;  // CSV rows: metric,a,b,delta
};

/// Throws ConfigError if the two runs did not use the same workload.
Comparison compare_runs(const ScenarioResult& a, const ScenarioResult& b);
void write_comparison_csv(std::ostream& out, const Comparison& c);

/// notif -> the clients whose active subscriptions match it, computed by
/// matching every notification against every subscription.
std::map<NotifId, std::set<ClientId>> expected_deliveries(const ScenarioResult& r);

}  // namespace octopia
