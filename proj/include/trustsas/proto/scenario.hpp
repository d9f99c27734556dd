#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trustsas/ledger/contract.hpp"
#include "trustsas/sim/calibration.hpp"
#include "trustsas/sim/metrics.hpp"
#include "trustsas/support.hpp"

namespace trustsas::proto {

enum class CryptoMode { Full, Charged };

struct ScriptEvent {
  double time_s = 0;         // absolute simulated time
  std::string kind;          // join | leader_crash | forge_usage | forge_tau | pu_vacate
  std::string node;          // joining SU id (join)
  uint32_t cell = 0;         // join location / vacate cell
  uint32_t channel = 0;      // vacate channel
  uint32_t cluster = 0;      // crash / forge target
};

struct ScenarioConfig {
  uint64_t seed = 1;

  uint32_t grid_n = 16;
  uint32_t channels = 8;
  uint32_t record_bytes = 128;

  uint32_t num_dbs = 7;
  uint32_t pir_t = 2;
  uint32_t tau = 10;
  uint32_t anchors = 3;

  // initial placement: count SUs placed at the given cell (clusters form
  // around dense placements)
  struct SuGroup {
    uint32_t count = 0;
    uint32_t cell = 0;
  };
  std::vector<SuGroup> su_groups;

  uint32_t cluster_radius = 2;
  uint32_t beacon_range = 3;
  uint32_t p2p_degree = 4;

  double latency_ms = 20;
  double bandwidth_mbps = 10;

  double cluster_time_s = 60;   // clustering phase start
  double peer_time_s = 120;     // peering-with-DBs phase start
  double epoch_start_s = 200;   // first epoch boundary
  double epoch_s = 600;
  uint32_t epochs = 3;
  double usage_offset_s = 240;  // usage notification offset within an epoch
  double beacon_period_s = 10;
  double beacon_duration_ms = 100;

  uint32_t gossip_fanout = 8;
  double pull_interval_s = 0.2;
  double bft_timeout_base_s = 2.0;
  double leader_timeout_s = 0;  // 0 = derived from link and calibration

  CryptoMode crypto_mode = CryptoMode::Full;
  // TBLS threshold rule: t = 2*floor((n-1)/3) unless an explicit value is set
  uint32_t tbls_t_explicit = 0;
  uint32_t max_batch_rows = 0;  // cap on PIR batch size; 0 = all distinct rows

  std::vector<ScriptEvent> script;
  sim::Calibration calib;
  bool debug_invariants = false;

  uint32_t total_sus() const {
    uint32_t n = 0;
    for (const auto& g : su_groups) n += g.count;
    return n;
  }

  static ScenarioConfig from_json(const std::string& text);  // validates, throws
  std::string to_json() const;
};

struct EpochObservation {
  std::vector<std::string> replica_hashes;  // one per DB, hex
  // assignments agreed inside each cluster (identical across members)
  std::map<uint32_t, std::vector<ledger::Assignment>> assignments;
  std::map<uint32_t, Bytes> assignment_encodings;
};

struct ScenarioResult {
  std::string trace_hash;
  double sim_end_s = 0;
  sim::Metrics metrics;
  std::vector<std::string> trace_lines;
  std::map<std::string, std::string> chain_dumps;  // chain id -> jsonl
  std::vector<std::string> db_app_logs;
  std::vector<std::string> invariant_failures;
  std::map<uint64_t, EpochObservation> epochs;
  uint32_t revocations = 0;
  uint32_t beacon_removals = 0;
  std::vector<std::string> leader_changes;  // "cluster-<i>:old->new"
  bool audits_ok = false;
  std::string audit_error;
  // measured end-to-end durations per algorithm (Table V analog)
  std::map<std::string, double> alg_total_s;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

// standalone consensus benchmark (validators + gossip only); returns the
// time at which the last honest validator committed, or nullopt
struct BftBenchResult {
  bool committed = false;
  bool diverged = false;
  double commit_time_s = 0;
  double msgs_per_validator = 0;
};
BftBenchResult run_bft_benchmark(size_t n, size_t byzantine_silent,
                                 size_t byzantine_equivocate, uint64_t seed,
                                 const ScenarioConfig& base);

// Table I-V analog emission: {operation, analytic_model, measured}
std::map<std::string, std::string> emit_tables(const ScenarioResult& result,
                                               const ScenarioConfig& cfg);

// algorithm-step to trace-event mapping (coverage checked in tests)
struct StepEvent {
  int algorithm;
  const char* step;
  const char* event;
  bool fault_path;
};
const std::vector<StepEvent>& step_event_table();

}  // namespace trustsas::proto
