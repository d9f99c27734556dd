#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "trustsas/crypto/bls12_381.hpp"
#include "trustsas/crypto/sha256.hpp"

namespace trustsas::epid {

using crypto::Fr;
using crypto::G1;
using crypto::G2;
using crypto::Gt;

struct JoinError : Error {
  using Error::Error;
};

// Membership verification public key. Members hold a credential
// (A, x, f) with A^{gamma+x} = g1 * h1^f; signatures prove possession in
// zero knowledge and carry a challenge-scoped link tag K = H(m)^f.
struct GroupPublicKey {
  uint32_t group_id = 0;
  uint32_t epoch = 1;  // issuer epoch, revocable via L3
  G2 w;                // g2^gamma
  G1 h1, u, v;         // system generators (g1 is the curve generator)

  // pairing precomputations used by sign and verify
  Gt e_g1_g2, e_h1_g2, e_v_g2, e_v_w;

  crypto::Digest fingerprint() const;
  Bytes serialize() const;
  static GroupPublicKey deserialize(const Bytes& b);
  void refresh_precomp();
};

struct IssuerSecret {
  uint32_t group_id = 0;
  Fr gamma;
};

struct GroupKeys {
  GroupPublicKey pub;
  IssuerSecret sk;
};

// per-member signing secret plus cached issuer-side pairing
struct MemberSecret {
  uint32_t group_id = 0;
  uint32_t epoch = 1;
  Fr f;  // member scalar, never revealed to the issuer
  Fr x;
  G1 a;
  Gt e_a_g2;
};

struct RevocationList {
  struct SigEntry {
    G1 basename;  // H(challenge m*)
    G1 tag;       // revoked link tag over that basename
  };
  std::vector<Fr> l1;          // revealed member secrets
  std::vector<SigEntry> l2;    // signature-based entries
  std::vector<uint32_t> l3;    // revoked issuer epochs
  uint64_t version = 0;

  size_t delta1() const { return l1.size(); }
  size_t delta2() const { return l2.size(); }
  size_t delta3() const { return l3.size(); }

  // appends are idempotent; version bumps only on a real append
  bool revoke_key(const Fr& f);
  bool revoke_signature(const G1& basename, const G1& tag);
  bool revoke_epoch(uint32_t epoch);
};

struct Signature {
  G1 t1, t2;  // u^alpha, A*v^alpha
  G1 k;       // link tag, H(m)^f
  Fr c;
  Fr s_x, s_alpha, s_delta, s_f;

  struct NrpEntry {  // per-L2 inequality proof
    G1 cpt;          // (B_i^f / K_i)^rho, must differ from identity
    Fr s1, s2;
  };
  std::vector<NrpEntry> nrp;

  struct EpochEntry {  // per-L3 inequality proof on the public epoch
    G1 cpt;
    Fr s;
  };
  std::vector<EpochEntry> epochs;

  Bytes serialize() const;
  static Signature deserialize(const Bytes& b);  // throws DecodeError
};

// setup/join/sign/verify

GroupKeys setup(unsigned security_level_bits, Rng& rng);  // 128 only

class Issuer {
 public:
  Issuer(GroupKeys keys) : keys_(std::move(keys)) {}

  struct JoinRequest {
    uint32_t group_id = 0;
    G1 f_commit;  // h1^f
    G1 pok_r;
    Fr pok_s;
  };
  struct JoinResponse {
    G1 a;
    Fr x;
    uint32_t epoch = 1;
  };

  // blind issuance: learns h1^f, never f
  JoinResponse handle_join(const JoinRequest& req, Rng& rng);

  const GroupPublicKey& pub() const { return keys_.pub; }
  size_t issued() const { return issued_; }

 private:
  GroupKeys keys_;
  size_t issued_ = 0;
};

Issuer::JoinRequest make_join_request(const GroupPublicKey& pub, const Fr& f, Rng& rng);

// full member-side join against an issuer; throws JoinError on mismatch
MemberSecret join(const GroupPublicKey& pub, Issuer& issuer, Rng& rng);

G1 link_basename(const Bytes& challenge);

Signature sign(const MemberSecret& sk, const GroupPublicKey& pub, const Bytes& challenge,
               const RevocationList& rl, Rng& rng);

bool verify(const GroupPublicKey& pub, const Bytes& challenge, const Signature& sig,
            const RevocationList& rl);

// mutual authentication over fresh challenges; pure composition used by
// the protocol layer and tests
bool two_way_authenticate(const MemberSecret& a, const MemberSecret& b,
                          const GroupPublicKey& pub, const RevocationList& rl, Rng& rng);

}  // namespace trustsas::epid
