#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <gmp.h>

#include <doctest.h>

#include "trustsas/crypto/fields.hpp"
#include "trustsas/support.hpp"

using namespace trustsas;
using namespace trustsas::crypto;

namespace {

// GMP-backed reference arithmetic for randomized cross-checks.
struct GmpMod {
  mpz_t mod;
  explicit GmpMod(const char* hex) {
    mpz_init(mod);
    mpz_set_str(mod, hex, 16);
  }
  ~GmpMod() { mpz_clear(mod); }
};

const char* kPHex =
    "1a0111ea397fe69a4b1ba7b6434bacd764774b84f38512bf6730d2a0f6b0f624"
    "1eabfffeb153ffffb9feffffffffaaab";
const char* kRHex = "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";

template <typename F>
void mpz_from_field(mpz_t out, const F& x) {
  Bytes b = x.to_bytes();
  mpz_import(out, b.size(), 1, 1, 0, 0, b.data());
}

template <typename F>
F field_from_mpz(const mpz_t x) {
  Bytes b(8 * F::N, 0);
  size_t count = 0;
  mpz_export(b.data() + b.size() - (mpz_sizeinbase(x, 2) + 7) / 8, &count, 1, 1, 0, 0, x);
  return F::from_bytes_be(b.data());
}

template <typename F>
void check_field_against_gmp(const char* mod_hex, int iters, uint64_t seed) {
  GmpMod M(mod_hex);
  Rng rng(seed);
  mpz_t a, b, c, expect;
  mpz_inits(a, b, c, expect, nullptr);
  for (int i = 0; i < iters; ++i) {
    F x = F::random(rng);
    F y = F::random(rng);
    mpz_from_field(a, x);
    mpz_from_field(b, y);

    mpz_add(expect, a, b);
    mpz_mod(expect, expect, M.mod);
    mpz_from_field(c, x + y);
    CHECK(mpz_cmp(c, expect) == 0);

    mpz_sub(expect, a, b);
    mpz_mod(expect, expect, M.mod);
    mpz_from_field(c, x - y);
    CHECK(mpz_cmp(c, expect) == 0);

    mpz_mul(expect, a, b);
    mpz_mod(expect, expect, M.mod);
    mpz_from_field(c, x * y);
    CHECK(mpz_cmp(c, expect) == 0);

    if (!y.is_zero()) {
      mpz_invert(expect, b, M.mod);
      mpz_from_field(c, y.inverse());
      CHECK(mpz_cmp(c, expect) == 0);
    }
  }
  mpz_clears(a, b, c, expect, nullptr);
}

}  // namespace

TEST_CASE("Fp arithmetic agrees with GMP") {
  check_field_against_gmp<Fp>(kPHex, 300, 11);
}

TEST_CASE("Fr arithmetic agrees with GMP") {
  check_field_against_gmp<Fr>(kRHex, 300, 12);
}

TEST_CASE("field identities") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Fp x = Fp::random(rng);
    CHECK(x + Fp::zero() == x);
    CHECK(x * Fp::one() == x);
    CHECK(x - x == Fp::zero());
    if (!x.is_zero()) CHECK(x * x.inverse() == Fp::one());
    CHECK((-x) + x == Fp::zero());
  }
}

TEST_CASE("byte round-trips and strict decode") {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    Fr x = Fr::random(rng);
    Bytes b = x.to_bytes();
    CHECK(Fr::from_bytes_be(b.data()) == x);
  }
  // modulus itself must be rejected
  Bytes top = from_hex(kRHex);
  CHECK_THROWS_AS(Fr::from_bytes_be(top.data()), DecodeError);
}

TEST_CASE("fp sqrt") {
  Rng rng(5);
  int squares = 0;
  for (int i = 0; i < 60; ++i) {
    Fp x = Fp::random(rng);
    Fp x2 = x.square();
    auto s = fp_sqrt(x2);
    REQUIRE(s.has_value());
    CHECK(s->square() == x2);
    if (fp_sqrt(x)) ++squares;
  }
  // roughly half of random elements are squares
  CHECK(squares > 10);
  CHECK(squares < 50);
}

TEST_CASE("fp2 arithmetic and sqrt") {
  Rng rng(6);
  for (int i = 0; i < 40; ++i) {
    Fp2 x = Fp2::random(rng);
    Fp2 y = Fp2::random(rng);
    CHECK((x * y) == (y * x));
    CHECK(x.square() == x * x);
    if (!x.is_zero()) CHECK(x * x.inverse() == Fp2::one());
    auto s = fp2_sqrt(x.square());
    REQUIRE(s.has_value());
    CHECK(s->square() == x.square());
  }
  // xi = 1+u consistency: mul_by_xi equals multiplication by (1,1)
  Fp2 xi{Fp::one(), Fp::one()};
  for (int i = 0; i < 10; ++i) {
    Fp2 x = Fp2::random(rng);
    CHECK(x.mul_by_xi() == x * xi);
  }
}

TEST_CASE("fp6/fp12 tower consistency") {
  Rng rng(7);
  auto rand6 = [&] { return Fp6{Fp2::random(rng), Fp2::random(rng), Fp2::random(rng)}; };
  for (int i = 0; i < 20; ++i) {
    Fp6 a = rand6(), b = rand6();
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inverse() == Fp6::one());
    // v * (a) equals shifting: mul_by_v vs explicit v element
    Fp6 v{Fp2::zero(), Fp2::one(), Fp2::zero()};
    CHECK(a.mul_by_v() == a * v);
  }
  for (int i = 0; i < 20; ++i) {
    Fp12 a{rand6(), rand6()};
    Fp12 b{rand6(), rand6()};
    CHECK(a * b == b * a);
    CHECK(a.square() == a * a);
    CHECK((a * a.inverse()).is_one());
    CHECK((a.conj() * a) == (a * a.conj()));
  }
}

TEST_CASE("frobenius_sq equals explicit p^2 power on random elements") {
  // x^(p^2) computed the slow way via two p-power maps is unavailable here;
  // instead verify the defining property multiplicatively: the map is an
  // automorphism fixing Fp2 scalars embedded at slot 1.
  Rng rng(8);
  auto rand6 = [&] { return Fp6{Fp2::random(rng), Fp2::random(rng), Fp2::random(rng)}; };
  for (int i = 0; i < 10; ++i) {
    Fp12 a{rand6(), rand6()};
    Fp12 b{rand6(), rand6()};
    CHECK((a * b).frobenius_sq() == a.frobenius_sq() * b.frobenius_sq());
  }
  Fp12 s = Fp12::one();
  s.c0.c0 = Fp2::random(rng);  // element of Fp2 subfield is fixed
  CHECK(s.frobenius_sq() == s);
}
