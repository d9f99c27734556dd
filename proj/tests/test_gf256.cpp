#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trustsas/crypto/gf256.hpp"

using namespace trustsas;
using namespace trustsas::crypto;

TEST_CASE("zero annihilates and one is identity") {
  for (int x = 0; x < 256; ++x) {
    CHECK(gf256::mul(0x00, (uint8_t)x) == 0x00);
    CHECK(gf256::mul(0x01, (uint8_t)x) == (uint8_t)x);
  }
}

TEST_CASE("0x53 * 0xCA = 0x01 under x^8+x^4+x^3+x+1") {
  CHECK(gf256::mul_bitwise(0x53, 0xca) == 0x01);
  CHECK(gf256::mul(0x53, 0xca) == 0x01);
  CHECK(gf256::inv(0x53) == 0xca);
}

TEST_CASE("table mul agrees with carry-less oracle on all 65536 pairs") {
  for (int a = 0; a < 256; ++a)
    for (int b = 0; b < 256; ++b)
      REQUIRE(gf256::mul((uint8_t)a, (uint8_t)b) ==
              gf256::mul_bitwise((uint8_t)a, (uint8_t)b));
}

TEST_CASE("addition is XOR") {
  for (int a = 0; a < 256; ++a)
    for (int b = 0; b < 256; b += 7)
      CHECK(gf256::add((uint8_t)a, (uint8_t)b) == ((uint8_t)a ^ (uint8_t)b));
}

TEST_CASE("every nonzero element has an inverse") {
  for (int a = 1; a < 256; ++a) {
    uint8_t ai = gf256::inv((uint8_t)a);
    CHECK(gf256::mul((uint8_t)a, ai) == 0x01);
  }
  CHECK_THROWS_AS(gf256::inv(0), ParamError);
}

TEST_CASE("evaluation point encoding") {
  CHECK(Gf256Field::from_index(1) == 1);
  CHECK(Gf256Field::from_index(255) == 255);
  CHECK_THROWS_AS(Gf256Field::from_index(0), ParamError);
  CHECK_THROWS_AS(Gf256Field::from_index(256), ParamError);
}
