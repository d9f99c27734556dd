#include "trustsas/crypto/ed25519.hpp"

#include <openssl/evp.h>

namespace trustsas::crypto {

namespace {

struct PkeyHolder {
  EVP_PKEY* p = nullptr;
  ~PkeyHolder() { EVP_PKEY_free(p); }
};

}  // namespace

Ed25519Key Ed25519Key::from_seed(const Bytes& seed) {
  if (seed.size() != 32) throw ParamError("ed25519: seed must be 32 bytes");
  PkeyHolder k;
  k.p = EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), 32);
  if (!k.p) throw Error("ed25519: key import failed");
  Ed25519Key out;
  out.seed = seed;
  out.pubkey.resize(32);
  size_t len = 32;
  if (EVP_PKEY_get_raw_public_key(k.p, out.pubkey.data(), &len) != 1 || len != 32)
    throw Error("ed25519: public key export failed");
  return out;
}

Ed25519Key Ed25519Key::generate(Rng& rng) { return from_seed(rng.bytes(32)); }

Bytes Ed25519Key::sign(const Bytes& msg) const {
  PkeyHolder k;
  k.p = EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), 32);
  if (!k.p) throw Error("ed25519: key import failed");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  Bytes sig(64);
  size_t len = 64;
  int ok = EVP_DigestSignInit(ctx, nullptr, nullptr, nullptr, k.p) == 1 &&
           EVP_DigestSign(ctx, sig.data(), &len, msg.data(), msg.size()) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok || len != 64) throw Error("ed25519: signing failed");
  return sig;
}

bool ed25519_verify(const Bytes& pubkey, const Bytes& msg, const Bytes& sig) {
  if (pubkey.size() != 32 || sig.size() != 64) return false;
  PkeyHolder k;
  k.p = EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, pubkey.data(), 32);
  if (!k.p) return false;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  bool ok = EVP_DigestVerifyInit(ctx, nullptr, nullptr, nullptr, k.p) == 1 &&
            EVP_DigestVerify(ctx, sig.data(), sig.size(), msg.data(), msg.size()) == 1;
  EVP_MD_CTX_free(ctx);
  return ok;
}

}  // namespace trustsas::crypto
