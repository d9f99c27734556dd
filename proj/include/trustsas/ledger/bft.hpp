#pragma once

#include <map>
#include <optional>
#include <set>

#include "trustsas/ledger/ledger.hpp"

namespace trustsas::ledger {

enum class BftMsgType : uint8_t {
  PrePrepare = 1,
  Prepare = 2,
  Commit = 3,
  ViewChange = 4,
  NewView = 5,
};

constexpr uint32_t kNoView = 0xffffffff;

struct BftMessage {
  BftMsgType type = BftMsgType::Prepare;
  std::string chain_id;
  uint64_t height = 0;
  uint32_t view = 0;
  crypto::Digest digest{};  // block digest for the three phases
  std::string sender;
  Bytes block;  // PrePrepare/NewView: proposed block; ViewChange: prepared block
  uint32_t prepared_view = kNoView;  // ViewChange only
  crypto::Digest prepared_digest{};
  std::vector<Bytes> vc_proof;  // NewView: the signed ViewChange quorum
  Bytes signature;

  Bytes signing_bytes() const;  // commit messages sign commit_sign_bytes instead
  Bytes encode() const;
  static BftMessage decode(const Bytes& b);
};

// One consensus round for one block height. The instance is a pure state
// machine: message in, messages out; the caller owns transport, gossip
// and timers. Safety holds for f < n/3 Byzantine validators; commit
// quorum is 2f+1.
class BftInstance {
 public:
  struct Callbacks {
    std::function<Bytes(const Bytes&)> sign;
    std::function<bool(const std::string& validator, const Bytes& msg, const Bytes& sig)>
        verify;
    std::function<bool(const Block&)> validate_block;  // application-level check
  };

  BftInstance(std::string chain_id, uint64_t height, ValidatorSet validators,
              std::string self, Callbacks cb, uint64_t view_timeout_ns,
              uint64_t start_ns);

  const std::string& proposer_of(uint32_t view) const;
  bool i_am_proposer() const { return proposer_of(view_) == self_; }
  uint32_t view() const { return view_; }

  // every validator installs the deterministic local candidate; the view-0
  // proposer's start() emits the pre-prepare
  void set_local_candidate(const Block& b);
  std::vector<BftMessage> start(uint64_t now_ns);

  std::vector<BftMessage> on_message(const BftMessage& msg, uint64_t now_ns);
  std::vector<BftMessage> on_timeout(uint64_t now_ns);
  uint64_t deadline_ns() const { return deadline_; }

  bool committed() const { return committed_.has_value(); }
  bool aborted() const { return aborted_; }
  const Block& committed_block() const;  // commit proof included

 private:
  std::vector<BftMessage> accept_proposal(const Block& b, uint32_t view, uint64_t now);
  std::vector<BftMessage> maybe_prepare_quorum(uint64_t now);
  std::vector<BftMessage> maybe_commit_quorum();
  std::vector<BftMessage> start_view_change(uint32_t new_view, uint64_t now);
  std::vector<BftMessage> maybe_new_view(uint32_t v, uint64_t now);
  BftMessage base_msg(BftMsgType type) const;
  void sign_msg(BftMessage& m) const;
  bool verify_msg(const BftMessage& m) const;

  std::string chain_id_;
  uint64_t height_;
  ValidatorSet validators_;
  std::string self_;
  Callbacks cb_;
  uint64_t timeout_ns_;
  uint64_t deadline_ = 0;

  uint32_t view_ = 0;
  std::optional<Block> local_candidate_;
  std::map<crypto::Digest, Block> candidates_;
  // per-view accepted proposal digest (first valid pre-prepare wins)
  std::map<uint32_t, crypto::Digest> accepted_;
  std::map<uint32_t, std::string> accepted_from_;
  std::map<std::pair<uint32_t, crypto::Digest>, std::set<std::string>> prepares_;
  std::map<crypto::Digest, std::map<std::string, Bytes>> commits_;
  std::set<uint32_t> sent_prepare_;
  std::set<crypto::Digest> sent_commit_;
  uint32_t prepared_view_ = kNoView;
  crypto::Digest prepared_digest_{};
  std::map<uint32_t, std::map<std::string, BftMessage>> view_changes_;
  std::set<uint32_t> sent_view_change_;
  std::set<uint32_t> sent_new_view_;
  uint32_t last_vc_view_ = 0;
  size_t timeout_count_ = 0;
  std::optional<Block> committed_;
  bool aborted_ = false;
};

}  // namespace trustsas::ledger
