#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "trustsas/tbls/tbls.hpp"

using namespace trustsas;
using namespace trustsas::crypto;
using namespace trustsas::tbls;

namespace {

std::vector<std::vector<size_t>> subsets_of_size(size_t n, size_t k) {
  std::vector<std::vector<size_t>> out;
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

}  // namespace

TEST_CASE("dkg n=4 t=1: all members agree on y and z-vector") {
  Rng rng(100);
  auto res = run_dkg_local(4, 1, rng);
  REQUIRE(res.qualified.size() == 4);
  const auto& first = res.members[0];
  for (size_t j = 1; j < 4; ++j) {
    CHECK(res.members[j].y == first.y);
    REQUIRE(res.members[j].member_keys.size() == 4);
    for (size_t k = 0; k < 4; ++k)
      CHECK(res.members[j].member_keys[k] == first.member_keys[k]);
  }
  // z_j = g2^{x_j}
  for (size_t j = 0; j < 4; ++j)
    CHECK(g2_generator() * res.members[j].x_share == first.member_keys[j]);
}

TEST_CASE("dkg: any 2 of 4 shares interpolate to y in the exponent") {
  Rng rng(101);
  auto res = run_dkg_local(4, 1, rng);
  for (const auto& idx : subsets_of_size(4, 2)) {
    std::vector<Fr> points;
    std::vector<Fr> values;
    for (size_t i : idx) {
      points.push_back(Fr::from_u64(i + 1));
      values.push_back(res.members[i].x_share);
    }
    auto lambda = lagrange_coeffs<FrField>(points, Fr::zero());
    Fr x = Fr::zero();
    for (size_t i = 0; i < points.size(); ++i) x += lambda[i] * values[i];
    CHECK(g2_generator() * x == res.members[0].y);
  }
}

TEST_CASE("dkg: silent member excluded, completes with n-1 qualified") {
  Rng rng(102);
  auto res = run_dkg_local(4, 1, rng, {2});
  CHECK(res.qualified.size() == 3);
  CHECK(std::find(res.qualified.begin(), res.qualified.end(), 2) == res.qualified.end());
  CHECK(res.members[0].y == res.members[2].y);
}

TEST_CASE("dkg: inconsistent dealer excluded by complaint") {
  Rng rng(103);
  auto res = run_dkg_local(4, 1, rng, {}, {3});
  CHECK(res.qualified.size() == 3);
  CHECK(std::find(res.qualified.begin(), res.qualified.end(), 3) == res.qualified.end());
  // remaining members still consistent
  CHECK(g2_generator() * res.members[0].x_share == res.members[1].member_keys[0]);
}

TEST_CASE("dkg failure when qualified < t+1") {
  Rng rng(104);
  CHECK_THROWS_AS(run_dkg_local(4, 2, rng, {1, 2}), DkgFailure);
}

TEST_CASE("share generation is deterministic and message-bound") {
  Rng rng(105);
  auto res = run_dkg_local(3, 1, rng);
  Bytes m1 = {'a', 'b'};
  Bytes m2 = {'a', 'c'};
  auto s1 = sign_share_gen(res.members[0].x_share, 1, m1);
  auto s1b = sign_share_gen(res.members[0].x_share, 1, m1);
  auto s2 = sign_share_gen(res.members[0].x_share, 1, m2);
  CHECK(s1.sigma == s1b.sigma);
  CHECK(s1.sigma != s2.sigma);
  CHECK(sign_share_verify(s1, res.members[0].member_keys[0], m1));
  CHECK_FALSE(sign_share_verify(s1, res.members[0].member_keys[0], m2));
  CHECK_FALSE(sign_share_verify(s2, res.members[1].member_keys[1], m2));
}

TEST_CASE("corrupted share encoding is rejected") {
  Rng rng(106);
  auto res = run_dkg_local(3, 1, rng);
  Bytes m = {'x'};
  auto s = sign_share_gen(res.members[0].x_share, 1, m);
  Bytes enc = g1_sig_serialize(s.sigma);
  enc[20] ^= 0xff;
  bool rejected = false;
  try {
    G1 p = g1_sig_deserialize(enc);
    rejected = !sign_share_verify({p, 1}, res.members[0].member_keys[0], m);
  } catch (const DecodeError&) {
    rejected = true;
  }
  CHECK(rejected);
}

TEST_CASE("reconstruction: subset independence t=1 n=3") {
  Rng rng(107);
  auto res = run_dkg_local(3, 1, rng);
  Bytes m = {'m'};
  std::vector<SignatureShare> shares;
  for (size_t j = 0; j < 3; ++j)
    shares.push_back(sign_share_gen(res.members[j].x_share, j + 1, m));
  G1 s12 = sign_reconstruct(1, {shares[0], shares[1]});
  G1 s23 = sign_reconstruct(1, {shares[1], shares[2]});
  G1 s13 = sign_reconstruct(1, {shares[0], shares[2]});
  CHECK(s12 == s23);
  CHECK(s12 == s13);
  CHECK(group_sign_verify(m, s12, res.members[0].y));
}

TEST_CASE("t=0 degenerate: sigma equals the single share") {
  Rng rng(108);
  auto res = run_dkg_local(2, 0, rng);
  Bytes m = {'z'};
  auto s1 = sign_share_gen(res.members[0].x_share, 1, m);
  G1 sigma = sign_reconstruct(0, {s1});
  CHECK(sigma == s1.sigma);
  CHECK(group_sign_verify(m, sigma, res.members[0].y));
  CHECK_THROWS_AS(sign_reconstruct(0, {}), InsufficientShares);
}

TEST_CASE("t shares are insufficient") {
  Rng rng(109);
  auto res = run_dkg_local(4, 2, rng);
  Bytes m = {'q'};
  std::vector<SignatureShare> two;
  for (size_t j = 0; j < 2; ++j)
    two.push_back(sign_share_gen(res.members[j].x_share, j + 1, m));
  CHECK_THROWS_AS(sign_reconstruct(2, two), InsufficientShares);
}

TEST_CASE("group verify rejects wrong key and altered message") {
  Rng rng(110);
  auto res = run_dkg_local(3, 1, rng);
  auto other = run_dkg_local(3, 1, rng);
  Bytes m = {'h', 'i'};
  std::vector<SignatureShare> shares;
  for (size_t j = 0; j < 2; ++j)
    shares.push_back(sign_share_gen(res.members[j].x_share, j + 1, m));
  G1 sigma = sign_reconstruct(1, shares);
  CHECK(group_sign_verify(m, sigma, res.members[0].y));
  CHECK_FALSE(group_sign_verify(m, sigma, other.members[0].y));
  Bytes m2 = m;
  m2[0] ^= 1;
  CHECK_FALSE(group_sign_verify(m2, sigma, res.members[0].y));
}

TEST_CASE("robustness: garbage shares filtered by verification") {
  Rng rng(111);
  size_t n = 7, t = 3;
  auto res = run_dkg_local(n, t, rng);
  Bytes m = {'r'};
  std::vector<SignatureShare> all;
  size_t garbage = (n - 1) / 2;
  for (size_t j = 0; j < n; ++j) {
    auto s = sign_share_gen(res.members[j].x_share, j + 1, m);
    if (j < garbage) s.sigma = g1_generator() * Fr::random(rng);  // corrupt
    all.push_back(s);
  }
  std::vector<SignatureShare> good;
  for (const auto& s : all)
    if (sign_share_verify(s, res.members[0].member_keys[s.signer - 1], m))
      good.push_back(s);
  REQUIRE(good.size() == n - garbage);
  REQUIRE(good.size() >= t + 1);
  G1 sigma = sign_reconstruct(t, good);
  CHECK(group_sign_verify(m, sigma, res.members[0].y));
}

TEST_CASE("threshold soundness: small coalitions cannot forge") {
  Rng rng(112);
  size_t n = 5, t = 2;
  auto res = run_dkg_local(n, t, rng);
  Bytes m = {'f'};
  std::vector<SignatureShare> shares;
  for (size_t j = 0; j < n; ++j)
    shares.push_back(sign_share_gen(res.members[j].x_share, j + 1, m));
  for (size_t k = 1; k <= t; ++k) {
    for (const auto& idx : subsets_of_size(n, k)) {
      std::vector<SignatureShare> sub;
      for (size_t i : idx) sub.push_back(shares[i]);
      // a coalition may interpolate whatever it likes; with < t+1 honest
      // shares the result never verifies
      std::vector<Fr> points;
      for (const auto& s : sub) points.push_back(Fr::from_u64(s.signer));
      auto lambda = lagrange_coeffs<FrField>(points, Fr::zero());
      G1 forged = G1::identity();
      for (size_t i = 0; i < sub.size(); ++i) forged = forged + sub[i].sigma * lambda[i];
      CHECK_FALSE(group_sign_verify(m, forged, res.members[0].y));
    }
  }
}
