#pragma once

#include <map>
#include <set>
#include <vector>

#include "trustsas/crypto/bls12_381.hpp"
#include "trustsas/crypto/shamir.hpp"

namespace trustsas::tbls {

using crypto::Fr;
using crypto::G1;
using crypto::G2;

struct DkgFailure : Error {
  using Error::Error;
};

// per-member output of a completed DKG
struct ClusterKeyMaterial {
  G2 y;                        // cluster public key
  Fr x_share;                  // this member's secret share
  std::vector<G2> member_keys; // z_1..z_n, index j-1
  size_t threshold = 0;        // t; t+1 shares reconstruct
  size_t n = 0;
  size_t index = 0;            // this member's j, 1-based
};

struct SignatureShare {
  G1 sigma;
  size_t signer = 0;  // 1-based index
};

// sigma_j = H(m)^{x_j}
SignatureShare sign_share_gen(const Fr& x_share, size_t index, const Bytes& msg);

// pairing check of one share against the member key z_j
bool sign_share_verify(const SignatureShare& share, const G2& z_j, const Bytes& msg);

// Lagrange combination of >= t+1 verified shares; the result is the same
// for every qualifying subset. Throws InsufficientShares / ParamError.
G1 sign_reconstruct(size_t threshold, const std::vector<SignatureShare>& shares);

// plain BLS verification under the cluster key
bool group_sign_verify(const Bytes& msg, const G1& sigma, const G2& y);

Bytes g1_sig_serialize(const G1& sigma);
G1 g1_sig_deserialize(const Bytes& b);

// --- distributed key generation (joint Feldman) ---
// Two broadcast rounds. Round 1: every dealer broadcasts polynomial
// commitments and sends one private share per member. Round 2: every
// member broadcasts the set of dealers whose shares matched the
// commitments. Dealers that are silent in either round, or that any
// member flagged inconsistent, are excluded from the qualified set.

struct DkgDeal {
  size_t dealer = 0;
  std::vector<G2> commitments;  // A_0..A_t, A_k = g2^{a_k}
};

struct DkgAck {
  size_t member = 0;
  std::vector<size_t> valid_dealers;  // sorted, dealers with consistent shares
};

class DkgSession {
 public:
  DkgSession(size_t index, size_t n, size_t t, Rng rng);

  DkgDeal make_deal() const;
  Fr share_for(size_t recipient) const;  // f_i(recipient)

  void receive_deal(const DkgDeal& deal);
  void receive_share(size_t dealer, const Fr& value);

  // round-2 broadcast once all expected round-1 traffic arrived (or timed out)
  DkgAck make_ack() const;
  void receive_ack(const DkgAck& ack);

  // qualified set: dealers present in every received ack
  std::vector<size_t> qualified() const;
  ClusterKeyMaterial finish() const;  // throws DkgFailure if |Q| < t+1

  size_t index() const { return index_; }

 private:
  size_t index_, n_, t_;
  std::vector<Fr> poly_;                  // my dealing polynomial
  std::map<size_t, std::vector<G2>> deals_;
  std::map<size_t, Fr> shares_;
  std::map<size_t, std::set<size_t>> acks_;
};

// Synchronous local driver used by tests and by the non-simulated path.
// silent: members that never deal/ack. bad_share_dealers: dealers that
// corrupt the share they send to member 1.
struct DkgRunResult {
  std::vector<ClusterKeyMaterial> members;  // empty slots for silent members
  std::vector<size_t> qualified;
};
DkgRunResult run_dkg_local(size_t n, size_t t, Rng& rng,
                           const std::set<size_t>& silent = {},
                           const std::set<size_t>& bad_share_dealers = {});

}  // namespace trustsas::tbls
