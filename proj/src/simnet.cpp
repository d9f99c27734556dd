#include "trustsas/sim/simnet.hpp"

#include <sstream>

namespace trustsas::sim {

SimNet::SimNet(const LinkParams& link, uint64_t seed) : link_(link), seed_(seed) {}

void SimNet::add_node(Node* node) {
  if (nodes_.count(node->id())) throw ParamError("simnet: duplicate node id");
  nodes_[node->id()] = node;
}

Node* SimNet::find_node(const std::string& id) {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : it->second;
}

SimTime SimNet::effective_now(const std::string& node) const {
  auto it = busy_until_.find(node);
  SimTime busy = it == busy_until_.end() ? 0 : it->second;
  return busy > now_ ? busy : now_;
}

void SimNet::charge(const std::string& node, SimTime cost) {
  SimTime start = effective_now(node);
  busy_until_[node] = start + cost;
  metrics_.add("charge_ns_total", double(cost));
}

void SimNet::send(const std::string& src, const std::string& dst, std::string kind,
                  Bytes payload, uint64_t wire_size_override) {
  Node* sn = find_node(src);
  if (!sn || !find_node(dst)) throw ParamError("simnet: unknown node in send");
  uint64_t size = wire_size_override ? wire_size_override : payload.size();
  metrics_.add("messages_sent");
  metrics_.add("bytes_sent", double(size));
  msgs_sent_[src] += 1;
  if (sn->crashed) return;  // a crashed sender transmits nothing

  SimTime depart = effective_now(src);
  SimTime tx = 0;
  if (link_.bandwidth_bps > 0)
    tx = static_cast<SimTime>(double(size) * 8.0 / link_.bandwidth_bps * 1e9);
  auto key = std::make_pair(src, dst);
  SimTime link_free = link_busy_.count(key) ? link_busy_[key] : 0;
  SimTime tx_start = depart > link_free ? depart : link_free;
  SimTime tx_end = tx_start + tx;
  link_busy_[key] = tx_end;

  Event ev;
  ev.time = tx_end + link_.latency;
  ev.seq = seq_++;
  ev.kind = Event::Kind::Deliver;
  ev.node = dst;
  ev.msg = Message{std::move(kind), src, dst, std::move(payload), size};
  queue_.push(std::move(ev));
}

void SimNet::set_timer(const std::string& node, SimTime delay, std::string label,
                       uint64_t cookie) {
  Event ev;
  ev.time = now_ + delay;
  ev.seq = seq_++;
  ev.kind = Event::Kind::Timer;
  ev.node = node;
  ev.label = std::move(label);
  ev.cookie = cookie;
  queue_.push(std::move(ev));
}

void SimNet::run(SimTime until) {
  while (!queue_.empty()) {
    const Event& top = queue_.top();
    if (top.time > until) break;
    Event ev = top;
    queue_.pop();
    if (ev.time < now_) throw Error("simnet: time went backwards");
    now_ = ev.time;
    Node* node = find_node(ev.node);
    if (!node || node->crashed) continue;
    if (ev.kind == Event::Kind::Deliver) {
      metrics_.add("messages_delivered");
      metrics_.add("bytes_delivered", double(ev.msg.wire_size));
      node->on_message(*this, ev.msg);
    } else {
      node->on_timer(*this, ev.label, ev.cookie);
    }
  }
  if (until != UINT64_MAX && now_ < until && queue_.empty()) now_ = until;
}

Rng& SimNet::node_rng(const std::string& node) {
  auto it = rngs_.find(node);
  if (it == rngs_.end()) {
    crypto::Digest d = crypto::sha256(node);
    uint64_t h = 0;
    for (int i = 0; i < 8; ++i) h = (h << 8) | d[i];
    it = rngs_.emplace(node, std::make_unique<Rng>(Rng::splitmix(seed_ ^ h))).first;
  }
  return *it->second;
}

void SimNet::trace(const std::string& node, const std::string& event,
                   const std::string& detail_json) {
  std::ostringstream line;
  line << "{\"t\":" << effective_now(node) << ",\"node\":\"" << node << "\",\"event\":\""
       << event << "\",\"detail\":" << detail_json << "}";
  trace_lines_.push_back(line.str());
  trace_event_counts_[event] += 1;
}

std::string SimNet::trace_hash() const {
  crypto::Sha256 h;
  for (const auto& line : trace_lines_) {
    h.update(line);
    h.update("\n");
  }
  return crypto::digest_hex(h.finish());
}

bool SimNet::trace_has_event(const std::string& event) const {
  return trace_event_counts_.count(event) > 0;
}

}  // namespace trustsas::sim
