#include "trustsas/crypto/sha256.hpp"

#include <openssl/evp.h>

namespace trustsas::crypto {

Sha256::Sha256() {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 init failed");
  ctx_ = ctx;
}

Sha256::~Sha256() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_)); }

Sha256& Sha256::update(const uint8_t* data, size_t n) {
  if (EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data, n) != 1)
    throw Error("sha256 update failed");
  return *this;
}

Sha256& Sha256::update_u64(uint64_t v) {
  uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(v >> (8 * i));
  return update(b, 8);
}

Digest Sha256::finish() {
  Digest out{};
  unsigned len = 0;
  if (EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), out.data(), &len) != 1 ||
      len != out.size())
    throw Error("sha256 final failed");
  return out;
}

Digest sha256(const uint8_t* data, size_t n) {
  Sha256 h;
  h.update(data, n);
  return h.finish();
}

Digest sha256(const Bytes& data) { return sha256(data.data(), data.size()); }

Digest sha256(const std::string& data) {
  return sha256(reinterpret_cast<const uint8_t*>(data.data()), data.size());
}

std::string digest_hex(const Digest& d) { return to_hex(d.data(), d.size()); }

}  // namespace trustsas::crypto
