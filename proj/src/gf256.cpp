#include "trustsas/crypto/gf256.hpp"

namespace trustsas::crypto::gf256 {

uint8_t mul_bitwise(uint8_t a, uint8_t b) {
  uint16_t acc = 0;
  uint16_t aa = a;
  for (int i = 0; i < 8; ++i) {
    if (b & (1 << i)) acc ^= static_cast<uint16_t>(aa << i);
  }
  for (int bit = 15; bit >= 8; --bit) {
    if (acc & (1 << bit)) acc ^= static_cast<uint16_t>(kReductionPoly << (bit - 8));
  }
  return static_cast<uint8_t>(acc);
}

namespace {

struct Tables {
  uint8_t log[256];
  uint8_t exp[512];  // doubled so mul can skip the mod 255
  Tables() {
    uint8_t x = 1;
    for (int i = 0; i < 255; ++i) {
      exp[i] = x;
      log[x] = static_cast<uint8_t>(i);
      x = mul_bitwise(x, 0x03);
    }
    for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];
    log[0] = 0;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

uint8_t mul(uint8_t a, uint8_t b) {
  if (a == 0 || b == 0) return 0;
  const Tables& t = tables();
  return t.exp[t.log[a] + t.log[b]];
}

uint8_t inv(uint8_t a) {
  if (a == 0) throw ParamError("gf256: inverse of zero");
  const Tables& t = tables();
  return t.exp[255 - t.log[a]];
}

}  // namespace trustsas::crypto::gf256
