#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "trustsas/crypto/fields.hpp"
#include "trustsas/crypto/gf256.hpp"
#include "trustsas/crypto/shamir.hpp"

using namespace trustsas;
using namespace trustsas::crypto;

namespace {

template <typename T>
std::vector<std::vector<size_t>> subsets_of_size(size_t n, size_t k, T) {
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> idx(k);
  std::vector<bool> sel(n, false);
  std::fill(sel.begin(), sel.begin() + k, true);
  do {
    std::vector<size_t> s;
    for (size_t i = 0; i < n; ++i)
      if (sel[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return out;
}

std::vector<std::vector<size_t>> subsets_of_size(size_t n, size_t k) {
  return subsets_of_size(n, k, 0);
}

template <typename F>
ShareSet<F> pick(const ShareSet<F>& all, const std::vector<size_t>& idx) {
  ShareSet<F> s;
  s.threshold = all.threshold;
  for (size_t i : idx) s.shares.push_back(all.shares[i]);
  return s;
}

}  // namespace

TEST_CASE("t=0 means constant polynomial") {
  Rng rng(1);
  auto set = shamir_share<Gf256Field>(0x5a, 0, 3, rng);
  for (const auto& s : set.shares) CHECK(s.value == 0x5a);
}

TEST_CASE("round-trip t=1 n=2") {
  Rng rng(2);
  uint8_t secret = 0xc3;
  auto set = shamir_share<Gf256Field>(secret, 1, 2, rng);
  CHECK(lagrange_reconstruct<Gf256Field>(set) == secret);
}

TEST_CASE("t=2 n=5: all C(5,3) subsets agree") {
  Rng rng(3);
  uint8_t secret = 0x77;
  auto set = shamir_share<Gf256Field>(secret, 2, 5, rng);
  for (const auto& idx : subsets_of_size(5, 3))
    CHECK(lagrange_reconstruct<Gf256Field>(pick(set, idx)) == secret);
}

TEST_CASE("round-trip over both fields for all t<n<=16") {
  Rng rng(4);
  for (size_t n = 2; n <= 16; ++n) {
    for (size_t t = 0; t < n; ++t) {
      uint8_t s8 = rng.next_byte();
      auto set = shamir_share<Gf256Field>(s8, t, n, rng);
      // every (t+1)-subset reconstructs
      for (const auto& idx : subsets_of_size(n, t + 1))
        REQUIRE(lagrange_reconstruct<Gf256Field>(pick(set, idx)) == s8);
    }
  }
  // scalar field: spot-check with random subsets (same code path)
  for (size_t n = 2; n <= 16; n += 3) {
    for (size_t t = 0; t < n; t += 2) {
      Fr s = Fr::random(rng);
      auto set = shamir_share<FrField>(s, t, n, rng);
      auto subs = subsets_of_size(n, t + 1);
      for (size_t k = 0; k < std::min<size_t>(subs.size(), 20); ++k)
        REQUIRE(lagrange_reconstruct<FrField>(pick(set, subs[k])) == s);
    }
  }
}

TEST_CASE("insufficient shares and duplicate points error") {
  Rng rng(5);
  auto set = shamir_share<Gf256Field>(0x10, 2, 5, rng);
  auto two = pick(set, {0, 1});
  CHECK_THROWS_AS(lagrange_reconstruct<Gf256Field>(two), InsufficientShares);
  auto dup = pick(set, {0, 1, 1});
  CHECK_THROWS_AS(lagrange_reconstruct<Gf256Field>(dup), ParamError);
  CHECK_THROWS_AS(shamir_share<Gf256Field>(1, 3, 3, rng), ParamError);
  CHECK_THROWS_AS(shamir_share<Gf256Field>(1, 5, 300, rng), ParamError);
}

TEST_CASE("lagrange coefficients") {
  // single point -> coefficient 1
  auto c1 = lagrange_coeffs<FrField>({Fr::from_u64(7)}, Fr::zero());
  REQUIRE(c1.size() == 1);
  CHECK(c1[0] == Fr::one());

  // points {1,2} at 0 over Z_r -> {2, r-1}
  auto c2 = lagrange_coeffs<FrField>({Fr::from_u64(1), Fr::from_u64(2)}, Fr::zero());
  CHECK(c2[0] == Fr::from_u64(2));
  CHECK(c2[1] == -Fr::one());

  // coefficients sum to 1 (interpolating the constant-1 polynomial)
  Rng rng(6);
  std::vector<Fr> pts;
  for (uint64_t j = 1; j <= 6; ++j) pts.push_back(Fr::from_u64(j * 13));
  auto cs = lagrange_coeffs<FrField>(pts, Fr::zero());
  Fr sum = Fr::zero();
  for (const auto& c : cs) sum += c;
  CHECK(sum == Fr::one());

  // duplicate points error
  CHECK_THROWS_AS(lagrange_coeffs<FrField>({Fr::one(), Fr::one()}, Fr::zero()),
                  ParamError);
}

TEST_CASE("exactly t+1 shares of a random polynomial recover the secret") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    size_t n = 3 + rng.next_below(10);
    size_t t = rng.next_below(n);
    uint8_t secret = rng.next_byte();
    auto set = shamir_share<Gf256Field>(secret, t, n, rng);
    ShareSet<Gf256Field> sub;
    sub.threshold = t;
    for (size_t i = 0; i <= t; ++i) sub.shares.push_back(set.shares[i]);
    CHECK(lagrange_reconstruct<Gf256Field>(sub) == secret);
  }
}

// Privacy shape: any t share values are jointly uniform. Deterministic
// seeded trial; chi-square per cell must not reject at p = 0.01
// (critical value 310.457 for 255 dof).
TEST_CASE("t shares are uniform (chi-square)") {
  constexpr double kCrit255 = 310.457;
  Rng rng(8);

  SUBCASE("t=1 single-share distribution, 256 bins") {
    const int trials = 256 * 10000 / 16;  // 10^4 per field element / 16 cells-ish
    std::vector<uint64_t> counts(256, 0);
    for (int i = 0; i < trials; ++i) {
      auto set = shamir_share<Gf256Field>(0xab, 1, 3, rng);
      counts[set.shares[0].value]++;
    }
    double expect = double(trials) / 256.0;
    double chi = 0;
    for (auto c : counts) chi += (c - expect) * (c - expect) / expect;
    CHECK(chi < kCrit255);
  }

  SUBCASE("t=2 joint distribution, coarsened to 256 bins") {
    const int trials = 256 * 10000 / 16;
    std::vector<uint64_t> counts(256, 0);
    for (int i = 0; i < trials; ++i) {
      auto set = shamir_share<Gf256Field>(0xcd, 2, 4, rng);
      uint8_t hi1 = set.shares[0].value >> 4;
      uint8_t hi2 = set.shares[1].value >> 4;
      counts[(hi1 << 4) | hi2]++;
    }
    double expect = double(trials) / 256.0;
    double chi = 0;
    for (auto c : counts) chi += (c - expect) * (c - expect) / expect;
    CHECK(chi < kCrit255);
  }
}
