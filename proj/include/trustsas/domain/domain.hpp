#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trustsas/crypto/ed25519.hpp"
#include "trustsas/crypto/sha256.hpp"
#include "trustsas/support.hpp"

namespace trustsas::domain {

// service area is an N x N grid; locations are cell indices
struct Grid {
  uint32_t n = 0;
  uint32_t cells() const { return n * n; }
  uint32_t row(uint32_t cell) const { return cell / n; }
  uint32_t col(uint32_t cell) const { return cell % n; }
  // Chebyshev distance, the natural radius metric on a square grid
  uint32_t distance(uint32_t a, uint32_t b) const {
    uint32_t dr = row(a) > row(b) ? row(a) - row(b) : row(b) - row(a);
    uint32_t dc = col(a) > col(b) ? col(a) - col(b) : col(b) - col(a);
    return dr > dc ? dr : dc;
  }
};

// channel usage rules carried inside every database record
struct UsageRules {
  uint32_t max_concurrent_sus = 1;
  int32_t max_tx_power_dbm = 30;
  uint32_t epoch_duration_s = 86400;
  bool operator==(const UsageRules&) const = default;
};

struct SpectrumRecord {
  uint32_t cell = 0;
  uint32_t channel = 0;
  int32_t max_tx_power_dbm = 30;
  uint32_t permitted_duration_s = 86400;
  UsageRules rules;
  uint32_t current_users = 0;  // updated from committed usage reports
  bool operator==(const SpectrumRecord&) const = default;
};

struct RecordLayout {
  uint32_t grid_n = 32;
  uint32_t channels = 16;
  uint32_t record_bytes = 128;  // b, fixed row width including signature
  uint32_t rows() const { return grid_n * grid_n * channels; }
  uint64_t total_bytes() const { return uint64_t(rows()) * record_bytes; }
};

constexpr uint32_t kRecordBodyFields = 32;   // serialized field bytes
constexpr uint32_t kRecordSigBytes = 64;     // trailing Ed25519 signature

// inverted index agreed with the DBs: row = cell * channels + channel
uint32_t record_index(const RecordLayout& layout, uint32_t cell, uint32_t channel);
std::pair<uint32_t, uint32_t> record_cell_channel(const RecordLayout& layout,
                                                  uint32_t index);

// fixed-width row codec; the signature covers everything before it
Bytes encode_record_row(const SpectrumRecord& rec, const RecordLayout& layout,
                        const crypto::Ed25519Key& signer);
SpectrumRecord decode_record_row(const uint8_t* row, const RecordLayout& layout);
bool verify_record_row(const uint8_t* row, const RecordLayout& layout,
                       const Bytes& db_pubkey);

// one replica of the spectrum database; all replicas built from the same
// inputs are byte-identical
class SpectrumDb {
 public:
  SpectrumDb() = default;
  SpectrumDb(const RecordLayout& layout, const crypto::Ed25519Key& record_key);

  const RecordLayout& layout() const { return layout_; }
  const uint8_t* data() const { return data_.data(); }
  const uint8_t* row(uint32_t index) const;
  SpectrumRecord record(uint32_t index) const;
  void put_record(const SpectrumRecord& rec);  // re-signs the row
  crypto::Digest content_hash() const;

  // usage bookkeeping from a committed report
  void apply_usage(uint32_t cell, uint32_t channel, uint32_t users);
  void clear_usage();  // epoch rollover
  // scripted incumbent-return event: channel becomes unavailable
  void vacate(uint32_t cell, uint32_t channel);

 private:
  RecordLayout layout_;
  crypto::Ed25519Key record_key_;
  std::vector<uint8_t> data_;
};

// DB-issued, chain-registered cluster advertisement
struct Beacon {
  uint32_t cluster_id = 0;
  std::string issuing_db;
  uint32_t control_channel = 0;
  uint64_t period_ms = 10000;  // T_beta
  uint32_t duration_ms = 100;  // d
  uint64_t nonce = 0;
  Bytes serialize() const;
  static Beacon deserialize(const Bytes& b);
};

// clustering inputs/outputs; pseudonym is whatever stable byte identity
// the caller has at clustering time
struct SuPlacement {
  std::string node;
  uint32_t cell = 0;
};

struct ClusterPlan {
  uint32_t seed_cell = 0;  // anchor cell; members lie within radius of it
  std::vector<SuPlacement> members;
};

// greedy cell-radius agglomeration, deterministic in input order
std::vector<ClusterPlan> form_clusters(std::vector<SuPlacement> sus, const Grid& grid,
                                       uint32_t radius);

// leader choice: minimum SHA-256 of the identity bytes
size_t elect_leader_by_hash(const std::vector<Bytes>& identities);

}  // namespace trustsas::domain
