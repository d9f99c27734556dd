#pragma once

#include <cstdint>

#include "trustsas/support.hpp"

namespace trustsas::crypto {

// GF(2^8) with reduction polynomial x^8 + x^4 + x^3 + x + 1 (0x11b).
// Addition is XOR; multiplication is table-driven via log/antilog over
// the generator 0x03.
namespace gf256 {

constexpr uint16_t kReductionPoly = 0x11b;

inline uint8_t add(uint8_t a, uint8_t b) { return a ^ b; }

uint8_t mul(uint8_t a, uint8_t b);
uint8_t inv(uint8_t a);  // throws ParamError on 0

// carry-less multiply then reduce, no tables; the reference route
uint8_t mul_bitwise(uint8_t a, uint8_t b);

}  // namespace gf256

// field traits used by the shared Shamir code
struct Gf256Field {
  using Elem = uint8_t;
  static constexpr size_t kOrder = 256;
  static Elem zero() { return 0; }
  static Elem one() { return 1; }
  static Elem add(Elem a, Elem b) { return gf256::add(a, b); }
  static Elem sub(Elem a, Elem b) { return gf256::add(a, b); }
  static Elem mul(Elem a, Elem b) { return gf256::mul(a, b); }
  static Elem inv(Elem a) { return gf256::inv(a); }
  static Elem neg(Elem a) { return a; }
  static bool is_zero(Elem a) { return a == 0; }
  static bool eq(Elem a, Elem b) { return a == b; }
  // evaluation point for 1-based participant index
  static Elem from_index(size_t j) {
    if (j == 0 || j >= kOrder) throw ParamError("gf256 index out of range");
    return static_cast<Elem>(j);
  }
  static Elem random(Rng& rng) { return rng.next_byte(); }
};

}  // namespace trustsas::crypto
