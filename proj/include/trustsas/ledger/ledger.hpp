#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trustsas/crypto/sha256.hpp"
#include "trustsas/support.hpp"

namespace trustsas::ledger {

enum class TxKind : uint8_t {
  KeyBinding = 1,
  ClusterPubKey = 2,
  BeaconIssue = 3,
  EpochAvailability = 4,
  UsageReport = 5,
  Revocation = 6,
  ContractTrigger = 7,
  ValidatorUpdate = 8,
};

enum class SigKind : uint8_t {
  None = 0,
  TblsShare = 1,
  TblsGroup = 2,
  Epid = 3,
  DbKey = 4,
};

const char* tx_kind_name(TxKind k);

struct Transaction {
  TxKind kind = TxKind::KeyBinding;
  uint32_t cluster_id = 0;
  uint64_t epoch = 0;
  Bytes author;  // pseudonym bytes or validator id bytes
  Bytes payload;
  SigKind sig_kind = SigKind::None;
  Bytes signature;

  Bytes encode() const;
  static Transaction decode(ByteReader& r);
  crypto::Digest digest() const;
};

struct ValidatorInfo {
  std::string id;
  Bytes pubkey;  // Ed25519 session/validator key
};

struct ValidatorSet {
  std::vector<ValidatorInfo> members;  // kept sorted by id

  size_t n() const { return members.size(); }
  size_t f() const { return members.empty() ? 0 : (members.size() - 1) / 3; }
  size_t quorum() const { return 2 * f() + 1; }
  const ValidatorInfo* find(const std::string& id) const;
  void add(ValidatorInfo v);  // keeps order, rejects duplicates silently
};

struct CommitSig {
  std::string validator;
  Bytes sig;  // over commit_sign_bytes(height, block hash)
};

Bytes commit_sign_bytes(uint64_t height, const crypto::Digest& block_hash);

struct Block {
  uint64_t height = 0;
  crypto::Digest prev{};
  uint64_t time_ns = 0;
  std::string proposer;
  std::vector<Transaction> txs;
  std::vector<CommitSig> commits;  // quorum proof, not part of the hash

  Bytes encode_header_and_txs() const;
  crypto::Digest hash() const;
  Bytes encode_full() const;
  static Block decode_full(const Bytes& b);
};

// verifies validator signatures; charged-mode runs substitute a
// structural checker here
using SigVerifyFn =
    std::function<bool(const ValidatorInfo&, const Bytes& msg, const Bytes& sig)>;

bool default_sig_verify(const ValidatorInfo& v, const Bytes& msg, const Bytes& sig);

// hash-linked block log with quorum-checked appends and an epoch-versioned
// validator set (updates only ever take effect at block boundaries)
class Chain {
 public:
  Chain() = default;
  Chain(std::string chain_id, ValidatorSet genesis_validators, uint64_t genesis_time_ns);

  const std::string& id() const { return id_; }
  size_t height() const { return blocks_.size(); }  // next block height
  const Block& head() const;
  const Block& at(uint64_t height) const;
  const std::vector<Block>& blocks() const { return blocks_; }

  const ValidatorSet& validators() const { return validators_; }

  // checks linkage + quorum of valid commit signatures, applies any
  // ValidatorUpdate transactions after acceptance
  void append_block(const Block& b, const SigVerifyFn& verify = default_sig_verify);

  // full re-verification from genesis; tx_check lets the caller verify
  // embedded signatures per transaction kind
  bool audit(const SigVerifyFn& verify = default_sig_verify,
             const std::function<bool(const Block&, const Transaction&)>& tx_check = {},
             std::string* error = nullptr) const;

  std::string dump_jsonl() const;
  static Chain load_jsonl(const std::string& text);

 private:
  void apply_validator_updates(const Block& b);
  std::string id_;
  ValidatorSet validators_;
  std::vector<Block> blocks_;
};

// --- transaction payload schemas (shared by protocol and CLI audit) ---

struct KeyBindingPayload {
  Bytes member_pubkey;    // z_j, compressed G2
  Bytes session_pubkey;   // validator session key bound to z_j
  Bytes epid_signature;   // EPID signature over z_j
  Bytes share_signature;  // TBLS share signature over (epid_sig || session key)
  Bytes encode() const;
  static KeyBindingPayload decode(const Bytes& b);
};

struct ClusterPubKeyPayload {
  Bytes y;          // compressed G2
  Bytes group_sig;  // TBLS signature of y under y
  Bytes encode() const;
  static ClusterPubKeyPayload decode(const Bytes& b);
};

struct RevocationPayload {
  uint8_t target_kind = 2;  // 1 = member key, 2 = link tag, 3 = issuer epoch
  Bytes basename;           // for tag entries
  Bytes value;              // tag bytes / key bytes / epoch u32
  bool remove_beacon = false;
  uint32_t beacon_cluster = 0;
  Bytes encode() const;
  static RevocationPayload decode(const Bytes& b);
};

struct UsageEntry {
  uint32_t cell = 0;
  uint32_t channel = 0;
  uint32_t users = 0;
  int64_t aggregate_power_dbm = 0;  // sum of member assignment powers
};

struct UsageReportPayload {
  uint64_t epoch = 0;
  std::vector<UsageEntry> entries;
  Bytes group_sig;  // TBLS cluster signature over the entry list
  Bytes signed_bytes() const;  // the message the cluster signs
  Bytes encode() const;
  static UsageReportPayload decode(const Bytes& b);
};

struct ValidatorUpdatePayload {
  std::string validator_id;
  Bytes pubkey;
  Bytes encode() const;
  static ValidatorUpdatePayload decode(const Bytes& b);
};

}  // namespace trustsas::ledger
