#include "trustsas/ledger/ledger.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "trustsas/crypto/ed25519.hpp"

namespace trustsas::ledger {

using nlohmann::json;

const char* tx_kind_name(TxKind k) {
  switch (k) {
    case TxKind::KeyBinding: return "key_binding";
    case TxKind::ClusterPubKey: return "cluster_pub_key";
    case TxKind::BeaconIssue: return "beacon_issue";
    case TxKind::EpochAvailability: return "epoch_availability";
    case TxKind::UsageReport: return "usage_report";
    case TxKind::Revocation: return "revocation";
    case TxKind::ContractTrigger: return "contract_trigger";
    case TxKind::ValidatorUpdate: return "validator_update";
  }
  return "unknown";
}

Bytes Transaction::encode() const {
  Bytes out;
  out.push_back(static_cast<uint8_t>(kind));
  put_u32(out, cluster_id);
  put_u64(out, epoch);
  put_bytes(out, author);
  put_bytes(out, payload);
  out.push_back(static_cast<uint8_t>(sig_kind));
  put_bytes(out, signature);
  return out;
}

Transaction Transaction::decode(ByteReader& r) {
  Transaction tx;
  tx.kind = static_cast<TxKind>(r.u8());
  tx.cluster_id = r.u32();
  tx.epoch = r.u64();
  tx.author = r.blob();
  tx.payload = r.blob();
  tx.sig_kind = static_cast<SigKind>(r.u8());
  tx.signature = r.blob();
  return tx;
}

crypto::Digest Transaction::digest() const { return crypto::sha256(encode()); }

const ValidatorInfo* ValidatorSet::find(const std::string& id) const {
  for (const auto& v : members)
    if (v.id == id) return &v;
  return nullptr;
}

void ValidatorSet::add(ValidatorInfo v) {
  if (find(v.id)) return;
  members.push_back(std::move(v));
  std::sort(members.begin(), members.end(),
            [](const ValidatorInfo& a, const ValidatorInfo& b) { return a.id < b.id; });
}

Bytes commit_sign_bytes(uint64_t height, const crypto::Digest& block_hash) {
  Bytes out;
  out.push_back('C');
  put_u64(out, height);
  out.insert(out.end(), block_hash.begin(), block_hash.end());
  return out;
}

Bytes Block::encode_header_and_txs() const {
  Bytes out;
  put_u64(out, height);
  out.insert(out.end(), prev.begin(), prev.end());
  put_u64(out, time_ns);
  put_bytes(out, Bytes(proposer.begin(), proposer.end()));
  put_u32(out, static_cast<uint32_t>(txs.size()));
  for (const auto& tx : txs) put_bytes(out, tx.encode());
  return out;
}

crypto::Digest Block::hash() const { return crypto::sha256(encode_header_and_txs()); }

Bytes Block::encode_full() const {
  Bytes out = encode_header_and_txs();
  put_u32(out, static_cast<uint32_t>(commits.size()));
  for (const auto& c : commits) {
    put_bytes(out, Bytes(c.validator.begin(), c.validator.end()));
    put_bytes(out, c.sig);
  }
  return out;
}

Block Block::decode_full(const Bytes& b) {
  ByteReader r(b);
  Block out;
  out.height = r.u64();
  Bytes prev = r.raw(32);
  std::copy(prev.begin(), prev.end(), out.prev.begin());
  out.time_ns = r.u64();
  Bytes prop = r.blob();
  out.proposer = std::string(prop.begin(), prop.end());
  uint32_t ntx = r.u32();
  for (uint32_t i = 0; i < ntx; ++i) {
    Bytes txb = r.blob();
    ByteReader tr(txb);
    out.txs.push_back(Transaction::decode(tr));
  }
  uint32_t nc = r.u32();
  for (uint32_t i = 0; i < nc; ++i) {
    Bytes vid = r.blob();
    CommitSig cs;
    cs.validator = std::string(vid.begin(), vid.end());
    cs.sig = r.blob();
    out.commits.push_back(cs);
  }
  return out;
}

bool default_sig_verify(const ValidatorInfo& v, const Bytes& msg, const Bytes& sig) {
  return crypto::ed25519_verify(v.pubkey, msg, sig);
}

Chain::Chain(std::string chain_id, ValidatorSet genesis_validators,
             uint64_t genesis_time_ns)
    : id_(std::move(chain_id)), validators_(std::move(genesis_validators)) {
  Block genesis;
  genesis.height = 0;
  genesis.time_ns = genesis_time_ns;
  genesis.proposer = "genesis";
  // the genesis block registers the initial validator set
  for (const auto& v : validators_.members) {
    Transaction tx;
    tx.kind = TxKind::ValidatorUpdate;
    ValidatorUpdatePayload p;
    p.validator_id = v.id;
    p.pubkey = v.pubkey;
    tx.payload = p.encode();
    genesis.txs.push_back(tx);
  }
  blocks_.push_back(genesis);
}

const Block& Chain::head() const {
  if (blocks_.empty()) throw Error("chain: empty");
  return blocks_.back();
}

const Block& Chain::at(uint64_t height) const {
  if (height >= blocks_.size()) throw ParamError("chain: height out of range");
  return blocks_[height];
}

namespace {

bool quorum_ok(const Block& b, const ValidatorSet& vals, const SigVerifyFn& verify) {
  Bytes msg = commit_sign_bytes(b.height, b.hash());
  size_t good = 0;
  std::vector<std::string> seen;
  for (const auto& c : b.commits) {
    if (std::find(seen.begin(), seen.end(), c.validator) != seen.end()) continue;
    const ValidatorInfo* v = vals.find(c.validator);
    if (!v) continue;
    if (!verify(*v, msg, c.sig)) continue;
    seen.push_back(c.validator);
    ++good;
  }
  return good >= vals.quorum();
}

}  // namespace

void Chain::apply_validator_updates(const Block& b) {
  for (const auto& tx : b.txs) {
    if (tx.kind != TxKind::ValidatorUpdate) continue;
    auto p = ValidatorUpdatePayload::decode(tx.payload);
    validators_.add({p.validator_id, p.pubkey});
  }
}

void Chain::append_block(const Block& b, const SigVerifyFn& verify) {
  if (b.height != blocks_.size()) throw Error("chain: bad height");
  if (b.prev != head().hash()) throw Error("chain: linkage mismatch");
  if (!quorum_ok(b, validators_, verify)) throw Error("chain: insufficient quorum");
  blocks_.push_back(b);
  apply_validator_updates(b);
}

bool Chain::audit(const SigVerifyFn& verify,
                  const std::function<bool(const Block&, const Transaction&)>& tx_check,
                  std::string* error) const {
  auto fail = [&](const std::string& why) {
    if (error) *error = why;
    return false;
  };
  if (blocks_.empty()) return fail("empty chain");
  // replay the validator set from genesis
  ValidatorSet vals;
  for (const auto& tx : blocks_[0].txs)
    if (tx.kind == TxKind::ValidatorUpdate) {
      auto p = ValidatorUpdatePayload::decode(tx.payload);
      vals.add({p.validator_id, p.pubkey});
    }
  for (size_t h = 1; h < blocks_.size(); ++h) {
    const Block& b = blocks_[h];
    if (b.height != h) return fail("height mismatch at " + std::to_string(h));
    if (b.prev != blocks_[h - 1].hash())
      return fail("hash linkage broken at " + std::to_string(h));
    if (!quorum_ok(b, vals, verify))
      return fail("quorum proof invalid at " + std::to_string(h));
    for (const auto& tx : b.txs) {
      if (tx_check && !tx_check(b, tx))
        return fail(std::string("transaction check failed at ") + std::to_string(h) +
                    " kind=" + tx_kind_name(tx.kind));
      if (tx.kind == TxKind::ValidatorUpdate) {
        auto p = ValidatorUpdatePayload::decode(tx.payload);
        vals.add({p.validator_id, p.pubkey});
      }
    }
  }
  return true;
}

std::string Chain::dump_jsonl() const {
  std::ostringstream out;
  {
    json meta;
    meta["chain_id"] = id_;
    meta["kind"] = "chain_meta";
    out << meta.dump() << "\n";
  }
  for (const auto& b : blocks_) {
    json j;
    j["height"] = b.height;
    j["prev"] = to_hex(b.prev.data(), b.prev.size());
    j["hash"] = [&] {
      auto h = b.hash();
      return to_hex(h.data(), h.size());
    }();
    j["time_ns"] = b.time_ns;
    j["proposer"] = b.proposer;
    json txs = json::array();
    for (const auto& tx : b.txs) {
      json t;
      t["kind"] = tx_kind_name(tx.kind);
      t["raw"] = to_hex(tx.encode());
      txs.push_back(t);
    }
    j["txs"] = txs;
    json commits = json::array();
    for (const auto& c : b.commits) {
      json cj;
      cj["validator"] = c.validator;
      cj["sig"] = to_hex(c.sig);
      commits.push_back(cj);
    }
    j["commits"] = commits;
    out << j.dump() << "\n";
  }
  return out.str();
}

Chain Chain::load_jsonl(const std::string& text) {
  Chain chain;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (first) {
      if (!j.contains("chain_id")) throw DecodeError("chain dump: missing meta line");
      chain.id_ = j["chain_id"].get<std::string>();
      first = false;
      continue;
    }
    Block b;
    b.height = j["height"].get<uint64_t>();
    Bytes prev = from_hex(j["prev"].get<std::string>());
    if (prev.size() != 32) throw DecodeError("chain dump: bad prev hash");
    std::copy(prev.begin(), prev.end(), b.prev.begin());
    b.time_ns = j["time_ns"].get<uint64_t>();
    b.proposer = j["proposer"].get<std::string>();
    for (const auto& t : j["txs"]) {
      Bytes raw = from_hex(t["raw"].get<std::string>());
      ByteReader r(raw);
      b.txs.push_back(Transaction::decode(r));
    }
    for (const auto& c : j["commits"]) {
      CommitSig cs;
      cs.validator = c["validator"].get<std::string>();
      cs.sig = from_hex(c["sig"].get<std::string>());
      b.commits.push_back(cs);
    }
    // recorded hash must match recomputed content
    if (to_hex(b.hash().data(), 32) != j["hash"].get<std::string>())
      throw DecodeError("chain dump: stored hash mismatch");
    chain.blocks_.push_back(b);
    chain.apply_validator_updates(b);
  }
  if (chain.blocks_.empty()) throw DecodeError("chain dump: no blocks");
  // rebuild validator set from genesis replay (done incrementally above)
  return chain;
}

// --- payload codecs ---

Bytes KeyBindingPayload::encode() const {
  Bytes out;
  put_bytes(out, member_pubkey);
  put_bytes(out, session_pubkey);
  put_bytes(out, epid_signature);
  put_bytes(out, share_signature);
  return out;
}

KeyBindingPayload KeyBindingPayload::decode(const Bytes& b) {
  ByteReader r(b);
  KeyBindingPayload p;
  p.member_pubkey = r.blob();
  p.session_pubkey = r.blob();
  p.epid_signature = r.blob();
  p.share_signature = r.blob();
  return p;
}

Bytes ClusterPubKeyPayload::encode() const {
  Bytes out;
  put_bytes(out, y);
  put_bytes(out, group_sig);
  return out;
}

ClusterPubKeyPayload ClusterPubKeyPayload::decode(const Bytes& b) {
  ByteReader r(b);
  ClusterPubKeyPayload p;
  p.y = r.blob();
  p.group_sig = r.blob();
  return p;
}

Bytes RevocationPayload::encode() const {
  Bytes out;
  out.push_back(target_kind);
  put_bytes(out, basename);
  put_bytes(out, value);
  out.push_back(remove_beacon ? 1 : 0);
  put_u32(out, beacon_cluster);
  return out;
}

RevocationPayload RevocationPayload::decode(const Bytes& b) {
  ByteReader r(b);
  RevocationPayload p;
  p.target_kind = r.u8();
  p.basename = r.blob();
  p.value = r.blob();
  p.remove_beacon = r.u8() != 0;
  p.beacon_cluster = r.u32();
  return p;
}

Bytes UsageReportPayload::signed_bytes() const {
  Bytes out;
  out.push_back('U');
  put_u64(out, epoch);
  put_u32(out, static_cast<uint32_t>(entries.size()));
  for (const auto& e : entries) {
    put_u32(out, e.cell);
    put_u32(out, e.channel);
    put_u32(out, e.users);
    put_u64(out, static_cast<uint64_t>(e.aggregate_power_dbm));
  }
  return out;
}

Bytes UsageReportPayload::encode() const {
  Bytes out = signed_bytes();
  put_bytes(out, group_sig);
  return out;
}

UsageReportPayload UsageReportPayload::decode(const Bytes& b) {
  ByteReader r(b);
  UsageReportPayload p;
  if (r.u8() != 'U') throw DecodeError("usage payload: bad tag");
  p.epoch = r.u64();
  uint32_t n = r.u32();
  for (uint32_t i = 0; i < n; ++i) {
    UsageEntry e;
    e.cell = r.u32();
    e.channel = r.u32();
    e.users = r.u32();
    e.aggregate_power_dbm = static_cast<int64_t>(r.u64());
    p.entries.push_back(e);
  }
  p.group_sig = r.blob();
  return p;
}

Bytes ValidatorUpdatePayload::encode() const {
  Bytes out;
  put_bytes(out, Bytes(validator_id.begin(), validator_id.end()));
  put_bytes(out, pubkey);
  return out;
}

ValidatorUpdatePayload ValidatorUpdatePayload::decode(const Bytes& b) {
  ByteReader r(b);
  ValidatorUpdatePayload p;
  Bytes id = r.blob();
  p.validator_id = std::string(id.begin(), id.end());
  p.pubkey = r.blob();
  return p;
}

}  // namespace trustsas::ledger
