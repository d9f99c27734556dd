#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace trustsas {

using Bytes = std::vector<uint8_t>;

// Error taxonomy. Callers distinguish bad parameters, malformed encodings,
// and not-enough-shares from ordinary verification failure (which is a
// bool, never an exception).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParamError : Error {
  using Error::Error;
};
struct DecodeError : Error {
  using Error::Error;
};
struct InsufficientShares : Error {
  using Error::Error;
};
struct DimensionError : Error {
  using Error::Error;
};

// Deterministic seeded randomness. All randomness in the system flows
// through one of these; raw engine outputs only (distribution adapters
// are implementation-defined and would break cross-platform determinism).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // uniform in [0, bound) via rejection
  uint64_t next_below(uint64_t bound) {
    if (bound == 0) throw ParamError("next_below: zero bound");
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % bound;
  }

  uint8_t next_byte() { return static_cast<uint8_t>(eng_() & 0xff); }

  void fill(uint8_t* out, size_t n) {
    size_t i = 0;
    while (i + 8 <= n) {
      uint64_t v = eng_();
      for (int k = 0; k < 8; ++k) out[i++] = static_cast<uint8_t>(v >> (8 * k));
    }
    if (i < n) {
      uint64_t v = eng_();
      while (i < n) {
        out[i++] = static_cast<uint8_t>(v & 0xff);
        v >>= 8;
      }
    }
  }

  Bytes bytes(size_t n) {
    Bytes b(n);
    fill(b.data(), n);
    return b;
  }

  // independent child stream; distinct labels give distinct streams
  Rng fork(uint64_t label) {
    uint64_t s = splitmix(eng_() ^ (0x9e3779b97f4a7c15ull * (label + 1)));
    return Rng(s);
  }

  static uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 eng_;
};

std::string to_hex(const uint8_t* data, size_t n);
std::string to_hex(const Bytes& b);
Bytes from_hex(const std::string& s);

inline void put_u16(Bytes& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>(v >> 8));
}
inline void put_u32(Bytes& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
inline void put_u64(Bytes& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
inline void put_bytes(Bytes& out, const Bytes& b) {
  put_u32(out, static_cast<uint32_t>(b.size()));
  out.insert(out.end(), b.begin(), b.end());
}

// cursor-style reader; throws DecodeError on truncation
class ByteReader {
 public:
  explicit ByteReader(const Bytes& b) : b_(b) {}
  uint8_t u8() {
    need(1);
    return b_[pos_++];
  }
  uint16_t u16() {
    need(2);
    uint16_t v = static_cast<uint16_t>(b_[pos_] | (b_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }
  Bytes raw(size_t n) {
    need(n);
    Bytes out(b_.begin() + pos_, b_.begin() + pos_ + n);
    pos_ += n;
    return out;
  }
  Bytes blob() {
    uint32_t n = u32();
    return raw(n);
  }
  bool done() const { return pos_ == b_.size(); }
  size_t remaining() const { return b_.size() - pos_; }

 private:
  void need(size_t n) const {
    if (pos_ + n > b_.size()) throw DecodeError("truncated input");
  }
  const Bytes& b_;
  size_t pos_ = 0;
};

}  // namespace trustsas
