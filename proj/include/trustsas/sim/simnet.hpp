#pragma once

#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <string>
#include <vector>

#include "trustsas/crypto/sha256.hpp"
#include "trustsas/sim/metrics.hpp"
#include "trustsas/support.hpp"

namespace trustsas::sim {

using SimTime = uint64_t;  // nanoseconds of simulated time

constexpr SimTime kMs = 1'000'000ull;
constexpr SimTime kSec = 1'000'000'000ull;

inline SimTime seconds(double s) { return static_cast<SimTime>(s * 1e9); }

struct Message {
  std::string kind;
  std::string src, dst;
  Bytes payload;
  uint64_t wire_size = 0;  // bytes on the wire; payload size unless overridden
};

struct LinkParams {
  SimTime latency = 20 * kMs;
  double bandwidth_bps = 10e6;  // 0 means infinite
};

class SimNet;

class Node {
 public:
  explicit Node(std::string id) : id_(std::move(id)) {}
  virtual ~Node() = default;
  virtual void on_message(SimNet& net, const Message& msg) = 0;
  virtual void on_timer(SimNet& net, const std::string& label, uint64_t cookie) {
    (void)net;
    (void)label;
    (void)cookie;
  }
  const std::string& id() const { return id_; }

  bool crashed = false;  // drops all traffic in both directions

 private:
  std::string id_;
};

// Deterministic discrete-event network. Transmission occupies the directed
// (src,dst) link for size/bandwidth, then the message propagates for one
// latency; per-pair FIFO follows from the link serialization. Compute
// charges serialize per node and delay that node's subsequent sends.
class SimNet {
 public:
  SimNet(const LinkParams& link, uint64_t seed);

  void add_node(Node* node);
  Node* find_node(const std::string& id);

  SimTime now() const { return now_; }
  // completion time of the current node's charged work
  SimTime effective_now(const std::string& node) const;

  void send(const std::string& src, const std::string& dst, std::string kind,
            Bytes payload, uint64_t wire_size_override = 0);
  void set_timer(const std::string& node, SimTime delay, std::string label,
                 uint64_t cookie = 0);
  // account simulated compute on a node
  void charge(const std::string& node, SimTime cost);
  void charge_seconds(const std::string& node, double s) {
    charge(node, seconds(s));
  }

  void run(SimTime until = UINT64_MAX);
  bool idle() const { return queue_.empty(); }

  Rng& node_rng(const std::string& node);
  Metrics& metrics() { return metrics_; }
  uint64_t msgs_sent_by(const std::string& node) const {
    auto it = msgs_sent_.find(node);
    return it == msgs_sent_.end() ? 0 : it->second;
  }
  const std::map<std::string, uint64_t>& msgs_sent_map() const { return msgs_sent_; }

  // line-delimited JSON event trace
  void trace(const std::string& node, const std::string& event,
             const std::string& detail_json = "{}");
  const std::vector<std::string>& trace_lines() const { return trace_lines_; }
  std::string trace_hash() const;
  bool trace_has_event(const std::string& event) const;

 private:
  struct Event {
    SimTime time;
    uint64_t seq;
    enum class Kind { Deliver, Timer } kind;
    std::string node;
    Message msg;
    std::string label;
    uint64_t cookie;
  };
  struct EventCmp {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  LinkParams link_;
  uint64_t seed_;
  SimTime now_ = 0;
  uint64_t seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, EventCmp> queue_;
  std::map<std::string, Node*> nodes_;
  std::map<std::string, SimTime> busy_until_;
  std::map<std::pair<std::string, std::string>, SimTime> link_busy_;
  std::map<std::string, std::unique_ptr<Rng>> rngs_;
  std::map<std::string, uint64_t> msgs_sent_;
  Metrics metrics_;
  std::vector<std::string> trace_lines_;
  std::map<std::string, uint64_t> trace_event_counts_;
};

}  // namespace trustsas::sim
