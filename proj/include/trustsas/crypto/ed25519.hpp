#pragma once

#include "trustsas/support.hpp"

namespace trustsas::crypto {

// thin wrapper over OpenSSL Ed25519; keys derive deterministically from
// seeded randomness
struct Ed25519Key {
  Bytes seed;    // 32-byte private seed
  Bytes pubkey;  // 32-byte public key

  static Ed25519Key generate(Rng& rng);
  static Ed25519Key from_seed(const Bytes& seed);
  Bytes sign(const Bytes& msg) const;  // 64 bytes
};

bool ed25519_verify(const Bytes& pubkey, const Bytes& msg, const Bytes& sig);

}  // namespace trustsas::crypto
