#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trustsas/crypto/bls12_381.hpp"
#include "trustsas/support.hpp"

using namespace trustsas;
using namespace trustsas::crypto;

namespace {

// schoolbook product of little-endian limb vectors; independent check
// that the hardcoded hard-part exponent satisfies r * E = p^4 - p^2 + 1
std::vector<uint64_t> big_mul(const std::vector<uint64_t>& a,
                              const std::vector<uint64_t>& b) {
  std::vector<uint64_t> out(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    unsigned __int128 carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      unsigned __int128 s = (unsigned __int128)a[i] * b[j] + out[i + j] + carry;
      out[i + j] = (uint64_t)s;
      carry = s >> 64;
    }
    size_t k = i + b.size();
    while (carry) {
      unsigned __int128 s = (unsigned __int128)out[k] + carry;
      out[k] = (uint64_t)s;
      carry = s >> 64;
      ++k;
    }
  }
  return out;
}

std::vector<uint64_t> big_sub(std::vector<uint64_t> a, const std::vector<uint64_t>& b) {
  unsigned __int128 borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t bi = i < b.size() ? b[i] : 0;
    unsigned __int128 d = (unsigned __int128)a[i] - bi - borrow;
    a[i] = (uint64_t)d;
    borrow = (d >> 64) & 1;
  }
  REQUIRE(borrow == 0);
  return a;
}

}  // namespace

TEST_CASE("hard-part exponent identity r*E == p^4 - p^2 + 1") {
  std::vector<uint64_t> p = {0xb9feffffffffaaabull, 0x1eabfffeb153ffffull,
                             0x6730d2a0f6b0f624ull, 0x64774b84f38512bfull,
                             0x4b1ba7b6434bacd7ull, 0x1a0111ea397fe69aull};
  std::vector<uint64_t> r = {0xffffffff00000001ull, 0x53bda402fffe5bfeull,
                             0x3339d80809a1d805ull, 0x73eda753299d7d48ull};
  std::vector<uint64_t> e = {
      0xe516c3f438e3ba79ull, 0xfa9912aae208ccf1ull, 0x905ce937335d5b68ull,
      0xc71a2629b0dea236ull, 0x83774940996754c8ull, 0x21d160aeb6a1e799ull,
      0x2ed0b283ed237db4ull, 0x915c97f36c6f1821ull, 0x67f17fcbde783765ull,
      0x2378b9039096d1b7ull, 0x7988f8761bdc51dcull, 0x2076995003fc77a1ull,
      0x827eca0ba621315bull, 0xe5a72bce8d63cb9full, 0xf68f7764c28b6f8aull,
      0x2f230063cf081517ull, 0x94506632528d6a9aull, 0xd3cde88eeb996ca3ull,
      0xc0bd38c3195c899eull, 0x000f686b3d807d01ull};
  auto p2 = big_mul(p, p);
  auto p4 = big_mul(p2, p2);
  auto lhs = big_mul(r, e);
  // p^4 - p^2 + 1
  auto rhs = big_sub(p4, p2);
  std::vector<uint64_t> one = {1};
  unsigned __int128 carry = 1;
  for (size_t i = 0; i < rhs.size() && carry; ++i) {
    unsigned __int128 s = (unsigned __int128)rhs[i] + carry;
    rhs[i] = (uint64_t)s;
    carry = s >> 64;
  }
  lhs.resize(rhs.size(), 0);
  CHECK(lhs == rhs);
}

TEST_CASE("generators are on curve and in subgroup") {
  const G1& g1 = g1_generator();
  const G2& g2 = g2_generator();
  auto [x1, y1] = g1.to_affine();
  CHECK(g1_on_curve_affine(x1, y1));
  CHECK(g1_in_subgroup(g1));
  auto [x2, y2] = g2.to_affine();
  CHECK(g2_on_curve_affine(x2, y2));
  CHECK(g2_in_subgroup(g2));
}

TEST_CASE("group law sanity") {
  Rng rng(21);
  Fr a = Fr::random(rng), b = Fr::random(rng);
  G1 P = g1_generator() * a;
  G1 Q = g1_generator() * b;
  CHECK(P + Q == Q + P);
  CHECK((P + Q) - Q == P);
  CHECK(g1_generator() * (a + b) == P + Q);
  CHECK((P - P).is_identity());
  G2 R = g2_generator() * a;
  CHECK(g2_generator() * (a + b) == R + g2_generator() * b);
}

TEST_CASE("pairing bilinearity") {
  Rng rng(22);
  const G1& g1 = g1_generator();
  const G2& g2 = g2_generator();
  Gt e = pairing(g1, g2);
  CHECK(e != Gt::one());  // non-degenerate

  Fr a = Fr::random(rng);
  Fr b = Fr::random(rng);
  Gt lhs = pairing(g1 * a, g2 * b);
  Gt rhs1 = pairing(g1, g2 * (a * b));
  Gt rhs2 = pairing(g1 * (a * b), g2);
  Gt rhs3 = e.pow(a).pow(b);
  CHECK(lhs == rhs1);
  CHECK(lhs == rhs2);
  CHECK(lhs == rhs3);

  // e(P, Q)*e(-P, Q) == 1
  CHECK(pairing_product_is_one({{g1 * a, g2 * b}, {-(g1 * a), g2 * b}}));
  // identity arguments
  CHECK(pairing(G1::identity(), g2) == Gt::one());
  CHECK(pairing(g1, G2::identity()) == Gt::one());
}

TEST_CASE("pairing product equals product of pairings") {
  Rng rng(23);
  G1 p1 = g1_generator() * Fr::random(rng);
  G1 p2 = g1_generator() * Fr::random(rng);
  G2 q1 = g2_generator() * Fr::random(rng);
  G2 q2 = g2_generator() * Fr::random(rng);
  Gt prod = pairing_product({{p1, q1}, {p2, q2}});
  CHECK(prod == pairing(p1, q1) * pairing(p2, q2));
}

TEST_CASE("serialization round-trips") {
  Rng rng(24);
  for (int i = 0; i < 8; ++i) {
    G1 p = g1_generator() * Fr::random(rng);
    Bytes b = g1_serialize(p);
    REQUIRE(b.size() == 48);
    CHECK(g1_deserialize(b.data(), b.size()) == p);
    G2 q = g2_generator() * Fr::random(rng);
    Bytes c = g2_serialize(q);
    REQUIRE(c.size() == 96);
    CHECK(g2_deserialize(c.data(), c.size()) == q);
  }
  // identity encodings
  CHECK(g1_deserialize(g1_serialize(G1::identity()).data(), 48).is_identity());
  CHECK(g2_deserialize(g2_serialize(G2::identity()).data(), 96).is_identity());
}

TEST_CASE("deserialize rejects corrupted points") {
  Rng rng(25);
  G1 p = g1_generator() * Fr::random(rng);
  Bytes b = g1_serialize(p);
  int rejected = 0;
  for (int i = 0; i < 30; ++i) {
    Bytes m = b;
    m[rng.next_below(m.size())] ^= (uint8_t)(1 + rng.next_below(255));
    try {
      G1 q = g1_deserialize(m.data(), m.size());
      if (q != p) ++rejected;  // decoded to a different valid point
    } catch (const DecodeError&) {
      ++rejected;
    }
  }
  CHECK(rejected == 30);
  CHECK_THROWS_AS(g1_deserialize(b.data(), 47), DecodeError);
}

TEST_CASE("hash_to_g1 lands in subgroup and separates inputs") {
  Bytes m1 = {1, 2, 3};
  Bytes m2 = {1, 2, 4};
  G1 h1 = hash_to_g1(m1, "test");
  G1 h2 = hash_to_g1(m2, "test");
  G1 h3 = hash_to_g1(m1, "other");
  CHECK(g1_in_subgroup(h1));
  CHECK(h1 != h2);
  CHECK(h1 != h3);
  CHECK(hash_to_g1(m1, "test") == h1);
  auto [x, y] = h1.to_affine();
  CHECK(g1_on_curve_affine(x, y));
}

TEST_CASE("exp counter counts scalar multiplications") {
  Rng rng(26);
  ops::exp_reset();
  Fr k = Fr::random(rng);
  (void)(g1_generator() * k);
  (void)(g2_generator() * k);
  Gt e = pairing(g1_generator(), g2_generator());
  (void)e.pow(k);
  CHECK(ops::exp_count() == 3);
}

TEST_CASE("cyclotomic square matches plain square in the cyclotomic subgroup") {
  Rng rng(27);
  Fp12 f;
  // produce a cyclotomic element via the easy part of the final exponentiation
  {
    Fp12 raw = miller_loop(g1_generator() * Fr::random(rng), g2_generator());
    Fp12 g = raw.conj() * raw.inverse();
    f = g.frobenius_sq() * g;
  }
  Fp12 x = f;
  for (int i = 0; i < 5; ++i) {
    CHECK(x.cyclotomic_square() == x.square());
    x = x.square() * f;
  }
  // NAF pow agrees with plain pow
  Fr k = Fr::random(rng);
  CHECK(f.pow_cyclotomic(k.canonical(), 255) == f.pow(k.canonical(), 255));
}
