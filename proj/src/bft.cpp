#include "trustsas/ledger/bft.hpp"

#include <algorithm>

namespace trustsas::ledger {

Bytes BftMessage::signing_bytes() const {
  Bytes out;
  out.push_back(static_cast<uint8_t>(type));
  put_bytes(out, Bytes(chain_id.begin(), chain_id.end()));
  put_u64(out, height);
  put_u32(out, view);
  out.insert(out.end(), digest.begin(), digest.end());
  put_bytes(out, Bytes(sender.begin(), sender.end()));
  put_u32(out, prepared_view);
  out.insert(out.end(), prepared_digest.begin(), prepared_digest.end());
  // proposals are bound through the digest; vc proofs carry own signatures
  return out;
}

Bytes BftMessage::encode() const {
  Bytes out;
  out.push_back(static_cast<uint8_t>(type));
  put_bytes(out, Bytes(chain_id.begin(), chain_id.end()));
  put_u64(out, height);
  put_u32(out, view);
  out.insert(out.end(), digest.begin(), digest.end());
  put_bytes(out, Bytes(sender.begin(), sender.end()));
  put_bytes(out, block);
  put_u32(out, prepared_view);
  out.insert(out.end(), prepared_digest.begin(), prepared_digest.end());
  put_u32(out, static_cast<uint32_t>(vc_proof.size()));
  for (const auto& p : vc_proof) put_bytes(out, p);
  put_bytes(out, signature);
  return out;
}

BftMessage BftMessage::decode(const Bytes& b) {
  ByteReader r(b);
  BftMessage m;
  m.type = static_cast<BftMsgType>(r.u8());
  Bytes cid = r.blob();
  m.chain_id = std::string(cid.begin(), cid.end());
  m.height = r.u64();
  m.view = r.u32();
  Bytes d = r.raw(32);
  std::copy(d.begin(), d.end(), m.digest.begin());
  Bytes s = r.blob();
  m.sender = std::string(s.begin(), s.end());
  m.block = r.blob();
  m.prepared_view = r.u32();
  Bytes pd = r.raw(32);
  std::copy(pd.begin(), pd.end(), m.prepared_digest.begin());
  uint32_t np = r.u32();
  for (uint32_t i = 0; i < np; ++i) m.vc_proof.push_back(r.blob());
  m.signature = r.blob();
  return m;
}

BftInstance::BftInstance(std::string chain_id, uint64_t height, ValidatorSet validators,
                         std::string self, Callbacks cb, uint64_t view_timeout_ns,
                         uint64_t start_ns)
    : chain_id_(std::move(chain_id)),
      height_(height),
      validators_(std::move(validators)),
      self_(std::move(self)),
      cb_(std::move(cb)),
      timeout_ns_(view_timeout_ns),
      deadline_(start_ns + view_timeout_ns) {}

const std::string& BftInstance::proposer_of(uint32_t view) const {
  return validators_.members[(height_ + view) % validators_.n()].id;
}

void BftInstance::set_local_candidate(const Block& b) {
  local_candidate_ = b;
  candidates_[b.hash()] = b;
}

BftMessage BftInstance::base_msg(BftMsgType type) const {
  BftMessage m;
  m.type = type;
  m.chain_id = chain_id_;
  m.height = height_;
  m.view = view_;
  m.sender = self_;
  return m;
}

void BftInstance::sign_msg(BftMessage& m) const {
  if (m.type == BftMsgType::Commit)
    m.signature = cb_.sign(commit_sign_bytes(height_, m.digest));
  else
    m.signature = cb_.sign(m.signing_bytes());
}

bool BftInstance::verify_msg(const BftMessage& m) const {
  if (!validators_.find(m.sender)) return false;
  if (m.chain_id != chain_id_ || m.height != height_) return false;
  if (m.type == BftMsgType::Commit)
    return cb_.verify(m.sender, commit_sign_bytes(height_, m.digest), m.signature);
  return cb_.verify(m.sender, m.signing_bytes(), m.signature);
}

std::vector<BftMessage> BftInstance::start(uint64_t now) {
  if (!i_am_proposer() || !local_candidate_) return {};
  BftMessage m = base_msg(BftMsgType::PrePrepare);
  m.digest = local_candidate_->hash();
  m.block = local_candidate_->encode_full();
  sign_msg(m);
  std::vector<BftMessage> out = {m};
  auto more = on_message(m, now);  // process own proposal
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::vector<BftMessage> BftInstance::accept_proposal(const Block& b, uint32_t view,
                                                     uint64_t now) {
  std::vector<BftMessage> out;
  crypto::Digest d = b.hash();
  candidates_[d] = b;
  accepted_[view] = d;
  if (view == view_ && !sent_prepare_.count(view_)) {
    sent_prepare_.insert(view_);
    BftMessage p = base_msg(BftMsgType::Prepare);
    p.digest = d;
    sign_msg(p);
    out.push_back(p);
    prepares_[{view_, d}].insert(self_);
    auto more = maybe_prepare_quorum(now);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

std::vector<BftMessage> BftInstance::maybe_prepare_quorum(uint64_t now) {
  (void)now;
  std::vector<BftMessage> out;
  auto acc = accepted_.find(view_);
  if (acc == accepted_.end()) return out;
  crypto::Digest d = acc->second;
  auto it = prepares_.find({view_, d});
  if (it == prepares_.end() || it->second.size() < validators_.quorum()) return out;
  if (prepared_view_ == kNoView || prepared_view_ < view_ ||
      prepared_digest_ == d) {
    prepared_view_ = view_;
    prepared_digest_ = d;
  }
  if (!sent_commit_.count(d)) {
    sent_commit_.insert(d);
    BftMessage c = base_msg(BftMsgType::Commit);
    c.digest = d;
    sign_msg(c);
    out.push_back(c);
    commits_[d][self_] = c.signature;
    auto more = maybe_commit_quorum();
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

std::vector<BftMessage> BftInstance::maybe_commit_quorum() {
  if (committed_) return {};
  for (auto& [d, sigs] : commits_) {
    if (sigs.size() < validators_.quorum()) continue;
    auto cand = candidates_.find(d);
    if (cand == candidates_.end()) continue;  // block bytes not seen yet
    Block b = cand->second;
    b.commits.clear();
    for (const auto& [validator, sig] : sigs) b.commits.push_back({validator, sig});
    committed_ = b;
    return {};
  }
  return {};
}

std::vector<BftMessage> BftInstance::start_view_change(uint32_t new_view, uint64_t now) {
  std::vector<BftMessage> out;
  if (committed_ || aborted_) return out;
  if (sent_view_change_.count(new_view)) return out;
  sent_view_change_.insert(new_view);
  if (new_view > last_vc_view_) last_vc_view_ = new_view;
  BftMessage m = base_msg(BftMsgType::ViewChange);
  m.view = new_view;
  m.prepared_view = prepared_view_;
  if (prepared_view_ != kNoView) {
    m.prepared_digest = prepared_digest_;
    auto it = candidates_.find(prepared_digest_);
    if (it != candidates_.end()) m.block = it->second.encode_full();
  }
  sign_msg(m);
  out.push_back(m);
  view_changes_[new_view][self_] = m;
  deadline_ = now + timeout_ns_;
  auto more = maybe_new_view(new_view, now);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::vector<BftMessage> BftInstance::maybe_new_view(uint32_t v, uint64_t now) {
  std::vector<BftMessage> out;
  auto it = view_changes_.find(v);
  if (it == view_changes_.end()) return out;
  auto& vcs = it->second;

  // join a view change once f+1 validators vouch for it
  if (v > view_ && vcs.size() >= validators_.f() + 1) {
    auto joins = start_view_change(v, now);
    out.insert(out.end(), joins.begin(), joins.end());
  }
  if (vcs.size() < validators_.quorum()) return out;

  if (v > view_) {
    view_ = v;
    deadline_ = now + timeout_ns_;
  }
  if (proposer_of(v) != self_ || sent_new_view_.count(v) || committed_ || aborted_)
    return out;
  // re-propose the highest prepared block from the quorum, else our candidate
  uint32_t best_view = kNoView;
  std::optional<Block> best_block;
  for (const auto& [sender, vc] : vcs) {
    (void)sender;
    if (vc.prepared_view == kNoView || vc.block.empty()) continue;
    if (best_view == kNoView || vc.prepared_view > best_view) {
      best_view = vc.prepared_view;
      best_block = Block::decode_full(vc.block);
    }
  }
  if (!best_block) best_block = local_candidate_;
  if (!best_block) return out;  // nothing to propose; wait for a later view

  sent_new_view_.insert(v);
  BftMessage m = base_msg(BftMsgType::NewView);
  m.view = v;
  Block fresh = *best_block;
  fresh.commits.clear();
  m.digest = fresh.hash();
  m.block = fresh.encode_full();
  for (const auto& [sender, vc] : vcs) {
    (void)sender;
    m.vc_proof.push_back(vc.encode());
  }
  sign_msg(m);
  out.push_back(m);
  auto more = on_message(m, now);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::vector<BftMessage> BftInstance::on_message(const BftMessage& msg, uint64_t now) {
  std::vector<BftMessage> out;
  if (committed_ || aborted_) return out;
  if (!verify_msg(msg)) return out;

  switch (msg.type) {
    case BftMsgType::PrePrepare: {
      if (msg.sender != proposer_of(msg.view)) break;
      Block b;
      try {
        b = Block::decode_full(msg.block);
      } catch (const Error&) {
        break;
      }
      if (b.hash() != msg.digest || b.height != height_) break;
      if (cb_.validate_block && !cb_.validate_block(b)) break;
      auto acc = accepted_.find(msg.view);
      if (acc != accepted_.end()) {
        // a second, conflicting proposal for the same view is proof of
        // proposer equivocation
        if (acc->second != msg.digest && accepted_from_[msg.view] == msg.sender) {
          auto vc = start_view_change(msg.view + 1, now);
          out.insert(out.end(), vc.begin(), vc.end());
        }
        break;
      }
      if (msg.view < view_) break;
      accepted_from_[msg.view] = msg.sender;
      if (msg.view > view_) {
        // future-view proposal arrives before our view-change quorum; hold
        // the candidate, prepare once we join that view
        candidates_[msg.digest] = b;
        accepted_[msg.view] = msg.digest;
        break;
      }
      auto more = accept_proposal(b, msg.view, now);
      out.insert(out.end(), more.begin(), more.end());
      break;
    }
    case BftMsgType::Prepare: {
      prepares_[{msg.view, msg.digest}].insert(msg.sender);
      if (msg.view == view_) {
        auto more = maybe_prepare_quorum(now);
        out.insert(out.end(), more.begin(), more.end());
      }
      break;
    }
    case BftMsgType::Commit: {
      commits_[msg.digest][msg.sender] = msg.signature;
      auto more = maybe_commit_quorum();
      out.insert(out.end(), more.begin(), more.end());
      break;
    }
    case BftMsgType::ViewChange: {
      view_changes_[msg.view][msg.sender] = msg;
      auto more = maybe_new_view(msg.view, now);
      out.insert(out.end(), more.begin(), more.end());
      break;
    }
    case BftMsgType::NewView: {
      if (msg.sender != proposer_of(msg.view) || msg.view < view_) break;
      // validate the embedded view-change quorum
      size_t good = 0;
      uint32_t best_view = kNoView;
      crypto::Digest best_digest{};
      std::set<std::string> seen;
      for (const auto& raw : msg.vc_proof) {
        BftMessage vc;
        try {
          vc = BftMessage::decode(raw);
        } catch (const Error&) {
          continue;
        }
        if (vc.type != BftMsgType::ViewChange || vc.view != msg.view) continue;
        if (seen.count(vc.sender) || !verify_msg(vc)) continue;
        seen.insert(vc.sender);
        ++good;
        if (vc.prepared_view != kNoView &&
            (best_view == kNoView || vc.prepared_view > best_view)) {
          best_view = vc.prepared_view;
          best_digest = vc.prepared_digest;
        }
      }
      if (good < validators_.quorum()) break;
      if (best_view != kNoView && best_digest != msg.digest) break;  // wrong block
      Block b;
      try {
        b = Block::decode_full(msg.block);
      } catch (const Error&) {
        break;
      }
      if (b.hash() != msg.digest || b.height != height_) break;
      if (cb_.validate_block && !cb_.validate_block(b)) break;
      if (msg.view > view_) {
        view_ = msg.view;
        deadline_ = now + timeout_ns_;
      }
      auto more = accept_proposal(b, msg.view, now);
      out.insert(out.end(), more.begin(), more.end());
      break;
    }
  }
  return out;
}

std::vector<BftMessage> BftInstance::on_timeout(uint64_t now) {
  if (committed_ || aborted_) return {};
  if (now < deadline_) return {};
  ++timeout_count_;
  if (timeout_count_ > validators_.n() + 2) {
    // cycled through every proposer without progress; give up cleanly
    aborted_ = true;
    return {};
  }
  uint32_t target = std::max(view_ + 1, last_vc_view_ + 1);
  return start_view_change(target, now);
}

const Block& BftInstance::committed_block() const {
  if (!committed_) throw Error("bft: not committed");
  return *committed_;
}

}  // namespace trustsas::ledger
