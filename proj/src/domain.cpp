#include "trustsas/domain/domain.hpp"

#include <algorithm>
#include <cstring>

namespace trustsas::domain {

uint32_t record_index(const RecordLayout& layout, uint32_t cell, uint32_t channel) {
  if (cell >= layout.grid_n * layout.grid_n) throw ParamError("record_index: bad cell");
  if (channel >= layout.channels) throw ParamError("record_index: bad channel");
  return cell * layout.channels + channel;
}

std::pair<uint32_t, uint32_t> record_cell_channel(const RecordLayout& layout,
                                                  uint32_t index) {
  if (index >= layout.rows()) throw ParamError("record_index: out of range");
  return {index / layout.channels, index % layout.channels};
}

static Bytes encode_record_body(const SpectrumRecord& rec, const RecordLayout& layout) {
  if (layout.record_bytes < kRecordBodyFields + kRecordSigBytes)
    throw ParamError("record layout too narrow");
  Bytes body;
  body.reserve(layout.record_bytes - kRecordSigBytes);
  put_u32(body, rec.cell);
  put_u32(body, rec.channel);
  put_u32(body, static_cast<uint32_t>(rec.max_tx_power_dbm));
  put_u32(body, rec.permitted_duration_s);
  put_u32(body, rec.rules.max_concurrent_sus);
  put_u32(body, static_cast<uint32_t>(rec.rules.max_tx_power_dbm));
  put_u32(body, rec.rules.epoch_duration_s);
  put_u32(body, rec.current_users);
  body.resize(layout.record_bytes - kRecordSigBytes, 0);
  return body;
}

Bytes encode_record_row(const SpectrumRecord& rec, const RecordLayout& layout,
                        const crypto::Ed25519Key& signer) {
  Bytes row = encode_record_body(rec, layout);
  Bytes sig = signer.sign(row);
  row.insert(row.end(), sig.begin(), sig.end());
  return row;
}

SpectrumRecord decode_record_row(const uint8_t* row, const RecordLayout& layout) {
  Bytes body(row, row + layout.record_bytes - kRecordSigBytes);
  ByteReader r(body);
  SpectrumRecord rec;
  rec.cell = r.u32();
  rec.channel = r.u32();
  rec.max_tx_power_dbm = static_cast<int32_t>(r.u32());
  rec.permitted_duration_s = r.u32();
  rec.rules.max_concurrent_sus = r.u32();
  rec.rules.max_tx_power_dbm = static_cast<int32_t>(r.u32());
  rec.rules.epoch_duration_s = r.u32();
  rec.current_users = r.u32();
  return rec;
}

bool verify_record_row(const uint8_t* row, const RecordLayout& layout,
                       const Bytes& db_pubkey) {
  size_t body_len = layout.record_bytes - kRecordSigBytes;
  Bytes body(row, row + body_len);
  Bytes sig(row + body_len, row + layout.record_bytes);
  return crypto::ed25519_verify(db_pubkey, body, sig);
}

SpectrumDb::SpectrumDb(const RecordLayout& layout, const crypto::Ed25519Key& record_key)
    : layout_(layout), record_key_(record_key) {
  data_.resize(layout.total_bytes());
  for (uint32_t i = 0; i < layout.rows(); ++i) {
    auto [cell, channel] = record_cell_channel(layout, i);
    SpectrumRecord rec;
    rec.cell = cell;
    rec.channel = channel;
    put_record(rec);
  }
}

const uint8_t* SpectrumDb::row(uint32_t index) const {
  if (index >= layout_.rows()) throw ParamError("db: row out of range");
  return data_.data() + size_t(index) * layout_.record_bytes;
}

SpectrumRecord SpectrumDb::record(uint32_t index) const {
  return decode_record_row(row(index), layout_);
}

void SpectrumDb::put_record(const SpectrumRecord& rec) {
  uint32_t index = record_index(layout_, rec.cell, rec.channel);
  Bytes bytes = encode_record_row(rec, layout_, record_key_);
  std::memcpy(data_.data() + size_t(index) * layout_.record_bytes, bytes.data(),
              bytes.size());
}

crypto::Digest SpectrumDb::content_hash() const {
  return crypto::sha256(data_.data(), data_.size());
}

void SpectrumDb::apply_usage(uint32_t cell, uint32_t channel, uint32_t users) {
  SpectrumRecord rec = record(record_index(layout_, cell, channel));
  rec.current_users = users;
  put_record(rec);
}

void SpectrumDb::clear_usage() {
  for (uint32_t i = 0; i < layout_.rows(); ++i) {
    SpectrumRecord rec = record(i);
    if (rec.current_users != 0) {
      rec.current_users = 0;
      put_record(rec);
    }
  }
}

void SpectrumDb::vacate(uint32_t cell, uint32_t channel) {
  SpectrumRecord rec = record(record_index(layout_, cell, channel));
  rec.rules.max_concurrent_sus = 0;
  put_record(rec);
}

Bytes Beacon::serialize() const {
  Bytes out;
  put_u32(out, cluster_id);
  put_bytes(out, Bytes(issuing_db.begin(), issuing_db.end()));
  put_u32(out, control_channel);
  put_u64(out, period_ms);
  put_u32(out, duration_ms);
  put_u64(out, nonce);
  return out;
}

Beacon Beacon::deserialize(const Bytes& b) {
  ByteReader r(b);
  Beacon out;
  out.cluster_id = r.u32();
  Bytes db = r.blob();
  out.issuing_db = std::string(db.begin(), db.end());
  out.control_channel = r.u32();
  out.period_ms = r.u64();
  out.duration_ms = r.u32();
  out.nonce = r.u64();
  return out;
}

std::vector<ClusterPlan> form_clusters(std::vector<SuPlacement> sus, const Grid& grid,
                                       uint32_t radius) {
  // deterministic in input order: first unassigned SU seeds the cluster
  std::vector<ClusterPlan> plans;
  std::vector<bool> assigned(sus.size(), false);
  for (size_t i = 0; i < sus.size(); ++i) {
    if (assigned[i]) continue;
    ClusterPlan plan;
    plan.seed_cell = sus[i].cell;
    for (size_t j = i; j < sus.size(); ++j) {
      if (assigned[j]) continue;
      if (grid.distance(plan.seed_cell, sus[j].cell) <= radius) {
        plan.members.push_back(sus[j]);
        assigned[j] = true;
      }
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

size_t elect_leader_by_hash(const std::vector<Bytes>& identities) {
  if (identities.empty()) throw ParamError("elect_leader: no candidates");
  size_t best = 0;
  crypto::Digest best_h = crypto::sha256(identities[0]);
  for (size_t i = 1; i < identities.size(); ++i) {
    crypto::Digest h = crypto::sha256(identities[i]);
    if (std::lexicographical_compare(h.begin(), h.end(), best_h.begin(), best_h.end())) {
      best = i;
      best_h = h;
    }
  }
  return best;
}

}  // namespace trustsas::domain
