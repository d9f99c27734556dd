#include "trustsas/tbls/tbls.hpp"

#include <algorithm>

namespace trustsas::tbls {

using namespace trustsas::crypto;

namespace {

const std::string kMsgDomain = "tbls:msg";

// point * small integer, used for commitment-polynomial evaluation
G2 mul_u64(const G2& p, uint64_t k) {
  G2 acc = G2::identity();
  for (int i = 63; i >= 0; --i) {
    acc = acc.dbl();
    if ((k >> i) & 1) acc = acc + p;
  }
  return acc;
}

// evaluate sum_k C_k * j^k by Horner with the small index j
G2 eval_commitments(const std::vector<G2>& coeffs, uint64_t j) {
  G2 acc = coeffs.back();
  for (size_t k = coeffs.size() - 1; k-- > 0;) acc = mul_u64(acc, j) + coeffs[k];
  return acc;
}

Fr eval_poly(const std::vector<Fr>& poly, uint64_t x) {
  Fr fx = Fr::from_u64(x);
  Fr acc = poly.back();
  for (size_t k = poly.size() - 1; k-- > 0;) acc = acc * fx + poly[k];
  return acc;
}

}  // namespace

SignatureShare sign_share_gen(const Fr& x_share, size_t index, const Bytes& msg) {
  return {hash_to_g1(msg, kMsgDomain) * x_share, index};
}

bool sign_share_verify(const SignatureShare& share, const G2& z_j, const Bytes& msg) {
  if (share.sigma.is_identity()) return false;
  G1 h = hash_to_g1(msg, kMsgDomain);
  // e(sigma, g2) == e(H(m), z_j)
  return pairing_product_is_one({{share.sigma, g2_generator()}, {-h, z_j}});
}

G1 sign_reconstruct(size_t threshold, const std::vector<SignatureShare>& shares) {
  if (shares.size() < threshold + 1)
    throw InsufficientShares("tbls: fewer than t+1 shares");
  std::vector<Fr> points;
  points.reserve(shares.size());
  for (const auto& s : shares) {
    if (s.signer == 0) throw ParamError("tbls: zero signer index");
    points.push_back(Fr::from_u64(s.signer));
  }
  auto lambda = lagrange_coeffs<FrField>(points, Fr::zero());
  G1 sigma = G1::identity();
  for (size_t i = 0; i < shares.size(); ++i) sigma = sigma + shares[i].sigma * lambda[i];
  return sigma;
}

bool group_sign_verify(const Bytes& msg, const G1& sigma, const G2& y) {
  if (sigma.is_identity() || y.is_identity()) return false;
  G1 h = hash_to_g1(msg, kMsgDomain);
  return pairing_product_is_one({{sigma, g2_generator()}, {-h, y}});
}

Bytes g1_sig_serialize(const G1& sigma) { return g1_serialize(sigma); }

G1 g1_sig_deserialize(const Bytes& b) { return g1_deserialize(b.data(), b.size()); }

// --- DKG ---

DkgSession::DkgSession(size_t index, size_t n, size_t t, Rng rng)
    : index_(index), n_(n), t_(t) {
  if (index == 0 || index > n) throw ParamError("dkg: bad index");
  if (n < t + 1) throw ParamError("dkg: need n >= t+1");
  poly_.resize(t + 1);
  for (auto& c : poly_) c = Fr::random(rng);
}

DkgDeal DkgSession::make_deal() const {
  DkgDeal d;
  d.dealer = index_;
  d.commitments.reserve(t_ + 1);
  for (const auto& c : poly_) d.commitments.push_back(g2_generator() * c);
  return d;
}

Fr DkgSession::share_for(size_t recipient) const {
  if (recipient == 0 || recipient > n_) throw ParamError("dkg: bad recipient");
  return eval_poly(poly_, recipient);
}

void DkgSession::receive_deal(const DkgDeal& deal) {
  if (deal.dealer == 0 || deal.dealer > n_ || deal.commitments.size() != t_ + 1)
    return;  // malformed deal, dealer will be excluded
  deals_[deal.dealer] = deal.commitments;
}

void DkgSession::receive_share(size_t dealer, const Fr& value) {
  shares_[dealer] = value;
}

DkgAck DkgSession::make_ack() const {
  DkgAck a;
  a.member = index_;
  for (const auto& [dealer, commitments] : deals_) {
    auto it = shares_.find(dealer);
    if (it == shares_.end()) continue;
    // g2^{s_ij} == sum_k A_ik * j^k
    if (g2_generator() * it->second == eval_commitments(commitments, index_))
      a.valid_dealers.push_back(dealer);
  }
  return a;
}

void DkgSession::receive_ack(const DkgAck& ack) {
  acks_[ack.member] =
      std::set<size_t>(ack.valid_dealers.begin(), ack.valid_dealers.end());
}

std::vector<size_t> DkgSession::qualified() const {
  std::vector<size_t> q;
  for (const auto& [dealer, commitments] : deals_) {
    (void)commitments;
    bool ok = acks_.count(dealer) > 0;  // dealer must be alive in round 2
    for (const auto& [member, valid] : acks_) {
      (void)member;
      if (!valid.count(dealer)) {
        ok = false;
        break;
      }
    }
    if (ok) q.push_back(dealer);
  }
  return q;
}

ClusterKeyMaterial DkgSession::finish() const {
  auto q = qualified();
  if (q.size() < t_ + 1) throw DkgFailure("dkg: qualified set smaller than t+1");

  ClusterKeyMaterial out;
  out.threshold = t_;
  out.n = n_;
  out.index = index_;

  out.x_share = Fr::zero();
  for (size_t dealer : q) out.x_share += shares_.at(dealer);

  // combined commitment polynomial over the qualified set
  std::vector<G2> combined(t_ + 1, G2::identity());
  for (size_t dealer : q) {
    const auto& cs = deals_.at(dealer);
    for (size_t k = 0; k <= t_; ++k) combined[k] = combined[k] + cs[k];
  }
  out.y = combined[0];
  out.member_keys.reserve(n_);
  for (size_t j = 1; j <= n_; ++j)
    out.member_keys.push_back(eval_commitments(combined, j));

  if (!(g2_generator() * out.x_share == out.member_keys[index_ - 1]))
    throw DkgFailure("dkg: own share inconsistent with combined commitments");
  return out;
}

DkgRunResult run_dkg_local(size_t n, size_t t, Rng& rng, const std::set<size_t>& silent,
                           const std::set<size_t>& bad_share_dealers) {
  std::vector<DkgSession> sessions;
  sessions.reserve(n);
  for (size_t j = 1; j <= n; ++j) sessions.emplace_back(j, n, t, rng.fork(j));

  // round 1
  for (size_t i = 1; i <= n; ++i) {
    if (silent.count(i)) continue;
    DkgDeal deal = sessions[i - 1].make_deal();
    for (size_t j = 1; j <= n; ++j) {
      if (silent.count(j)) continue;
      sessions[j - 1].receive_deal(deal);
      Fr v = sessions[i - 1].share_for(j);
      if (bad_share_dealers.count(i) && j == 1) v += Fr::one();
      sessions[j - 1].receive_share(i, v);
    }
  }
  // round 2
  for (size_t i = 1; i <= n; ++i) {
    if (silent.count(i)) continue;
    DkgAck ack = sessions[i - 1].make_ack();
    for (size_t j = 1; j <= n; ++j) {
      if (silent.count(j)) continue;
      sessions[j - 1].receive_ack(ack);
    }
  }

  DkgRunResult out;
  out.members.resize(n);
  for (size_t j = 1; j <= n; ++j) {
    if (silent.count(j)) continue;
    out.members[j - 1] = sessions[j - 1].finish();
  }
  for (size_t j = 1; j <= n; ++j)
    if (!silent.count(j)) {
      out.qualified = sessions[j - 1].qualified();
      break;
    }
  return out;
}

}  // namespace trustsas::tbls
