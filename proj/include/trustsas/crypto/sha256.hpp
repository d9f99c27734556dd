#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "trustsas/support.hpp"

namespace trustsas::crypto {

using Digest = std::array<uint8_t, 32>;

Digest sha256(const uint8_t* data, size_t n);
Digest sha256(const Bytes& data);
Digest sha256(const std::string& data);

// incremental hashing for composite inputs
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(const uint8_t* data, size_t n);
  Sha256& update(const Bytes& b) { return update(b.data(), b.size()); }
  Sha256& update(const std::string& s) {
    return update(reinterpret_cast<const uint8_t*>(s.data()), s.size());
  }
  Sha256& update_u64(uint64_t v);
  Digest finish();

 private:
  void* ctx_;
};

inline Bytes digest_bytes(const Digest& d) { return Bytes(d.begin(), d.end()); }
std::string digest_hex(const Digest& d);

}  // namespace trustsas::crypto
