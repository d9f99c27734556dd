#include "trustsas/epid/epid.hpp"

#include <algorithm>

namespace trustsas::epid {

using namespace trustsas::crypto;

namespace {

const std::string kBsnDomain = "epid:bsn";
const std::string kGenDomain = "epid:gen";
const std::string kChalDomain = "epid:chal";
const std::string kJoinDomain = "epid:join";

void put_point(Sha256& h, const G1& p) { h.update(g1_serialize(p)); }

}  // namespace

crypto::Digest GroupPublicKey::fingerprint() const {
  Sha256 h;
  h.update("epid:gpk");
  h.update_u64(group_id);
  h.update_u64(epoch);
  h.update(g2_serialize(w));
  h.update(g1_serialize(h1));
  h.update(g1_serialize(u));
  h.update(g1_serialize(v));
  return h.finish();
}

void GroupPublicKey::refresh_precomp() {
  e_g1_g2 = pairing(g1_generator(), g2_generator());
  e_h1_g2 = pairing(h1, g2_generator());
  e_v_g2 = pairing(v, g2_generator());
  e_v_w = pairing(v, w);
}

Bytes GroupPublicKey::serialize() const {
  Bytes out;
  out.push_back(0x02);  // format tag
  put_u32(out, group_id);
  put_u32(out, epoch);
  put_bytes(out, g2_serialize(w));
  put_bytes(out, g1_serialize(h1));
  put_bytes(out, g1_serialize(u));
  put_bytes(out, g1_serialize(v));
  return out;
}

GroupPublicKey GroupPublicKey::deserialize(const Bytes& b) {
  ByteReader r(b);
  if (r.u8() != 0x02) throw DecodeError("gpk: bad tag");
  GroupPublicKey pub;
  pub.group_id = r.u32();
  pub.epoch = r.u32();
  Bytes wb = r.blob();
  pub.w = g2_deserialize(wb.data(), wb.size());
  Bytes hb = r.blob();
  pub.h1 = g1_deserialize(hb.data(), hb.size());
  Bytes ub = r.blob();
  pub.u = g1_deserialize(ub.data(), ub.size());
  Bytes vb = r.blob();
  pub.v = g1_deserialize(vb.data(), vb.size());
  pub.refresh_precomp();
  return pub;
}

GroupKeys setup(unsigned security_level_bits, Rng& rng) {
  if (security_level_bits != 128) throw ParamError("epid: unsupported security level");
  GroupKeys keys;
  keys.sk.gamma = Fr::random(rng);
  keys.sk.group_id = static_cast<uint32_t>(rng.next_u64() >> 33);
  keys.pub.group_id = keys.sk.group_id;
  keys.pub.epoch = 1;
  keys.pub.w = g2_generator() * keys.sk.gamma;
  // nothing-up-my-sleeve generators, separated per group
  Bytes seed;
  put_u32(seed, keys.pub.group_id);
  Bytes s1 = seed;
  s1.push_back(1);
  keys.pub.h1 = hash_to_g1(s1, kGenDomain);
  Bytes s2 = seed;
  s2.push_back(2);
  keys.pub.u = hash_to_g1(s2, kGenDomain);
  Bytes s3 = seed;
  s3.push_back(3);
  keys.pub.v = hash_to_g1(s3, kGenDomain);
  keys.pub.refresh_precomp();
  return keys;
}

Issuer::JoinRequest make_join_request(const GroupPublicKey& pub, const Fr& f, Rng& rng) {
  Issuer::JoinRequest req;
  req.group_id = pub.group_id;
  req.f_commit = pub.h1 * f;
  Fr r = Fr::random(rng);
  req.pok_r = pub.h1 * r;
  Sha256 h;
  h.update(kJoinDomain);
  h.update(pub.fingerprint().data(), 32);
  put_point(h, req.f_commit);
  put_point(h, req.pok_r);
  Fr c = hash_to_fr(digest_bytes(h.finish()), kJoinDomain);
  req.pok_s = r + c * f;
  return req;
}

Issuer::JoinResponse Issuer::handle_join(const JoinRequest& req, Rng& rng) {
  if (req.group_id != keys_.pub.group_id) throw JoinError("epid join: group mismatch");
  Sha256 h;
  h.update(kJoinDomain);
  h.update(keys_.pub.fingerprint().data(), 32);
  put_point(h, req.f_commit);
  put_point(h, req.pok_r);
  Fr c = hash_to_fr(digest_bytes(h.finish()), kJoinDomain);
  if (!(keys_.pub.h1 * req.pok_s == req.pok_r + req.f_commit * c))
    throw JoinError("epid join: bad proof of knowledge");

  JoinResponse resp;
  resp.x = Fr::random(rng);
  resp.epoch = keys_.pub.epoch;
  Fr exp = (keys_.sk.gamma + resp.x).inverse();
  resp.a = (g1_generator() + req.f_commit) * exp;
  ++issued_;
  return resp;
}

MemberSecret join(const GroupPublicKey& pub, Issuer& issuer, Rng& rng) {
  if (issuer.pub().group_id != pub.group_id ||
      issuer.pub().fingerprint() != pub.fingerprint())
    throw JoinError("epid join: issuer does not hold matching group key");
  Fr f = Fr::random(rng);
  auto resp = issuer.handle_join(make_join_request(pub, f, rng), rng);
  // validate the credential: e(A, w * g2^x) == e(g1 * h1^f, g2)
  G2 wx = pub.w + g2_generator() * resp.x;
  G1 base = g1_generator() + pub.h1 * f;
  if (!pairing_product_is_one({{resp.a, wx}, {-base, g2_generator()}}))
    throw JoinError("epid join: credential failed validation");
  MemberSecret sk;
  sk.group_id = pub.group_id;
  sk.epoch = resp.epoch;
  sk.f = f;
  sk.x = resp.x;
  sk.a = resp.a;
  sk.e_a_g2 = pairing(resp.a, g2_generator());
  return sk;
}

bool RevocationList::revoke_key(const Fr& f) {
  for (const auto& e : l1)
    if (e == f) return false;
  l1.push_back(f);
  ++version;
  return true;
}

bool RevocationList::revoke_signature(const G1& basename, const G1& tag) {
  for (const auto& e : l2)
    if (e.basename == basename && e.tag == tag) return false;
  l2.push_back({basename, tag});
  ++version;
  return true;
}

bool RevocationList::revoke_epoch(uint32_t epoch) {
  for (auto e : l3)
    if (e == epoch) return false;
  l3.push_back(epoch);
  ++version;
  return true;
}

G1 link_basename(const Bytes& challenge) { return hash_to_g1(challenge, kBsnDomain); }

namespace {

// Fiat-Shamir transcript shared by sign and verify; the verifier feeds
// recomputed commitments in the exact order the signer used
struct Transcript {
  Sha256 h;
  Transcript(const GroupPublicKey& pub, const Bytes& challenge) {
    h.update(kChalDomain);
    h.update(pub.fingerprint().data(), 32);
    h.update_u64(challenge.size());
    h.update(challenge);
  }
  void point(const G1& p) { put_point(h, p); }
  void gt(const Gt& g) { h.update(g.serialize()); }
  Fr challenge() { return hash_to_fr(digest_bytes(h.finish()), kChalDomain); }
};

}  // namespace

Signature sign(const MemberSecret& sk, const GroupPublicKey& pub, const Bytes& challenge,
               const RevocationList& rl, Rng& rng) {
  G1 bsn = link_basename(challenge);

  Signature sig;
  Fr alpha = Fr::random(rng);
  Fr delta = alpha * sk.x;
  sig.t1 = pub.u * alpha;
  sig.t2 = sk.a + pub.v * alpha;
  sig.k = bsn * sk.f;

  Fr r_x = Fr::random(rng), r_alpha = Fr::random(rng);
  Fr r_delta = Fr::random(rng), r_f = Fr::random(rng);

  G1 r1 = pub.u * r_alpha;
  G1 r2 = sig.t1 * r_x - pub.u * r_delta;
  Gt e_t2_g2 = sk.e_a_g2 * pub.e_v_g2.pow(alpha);
  Gt r3 = e_t2_g2.pow(r_x) * pub.e_v_w.pow(r_alpha).inverse() *
          pub.e_v_g2.pow(r_delta).inverse() * pub.e_h1_g2.pow(r_f).inverse();
  G1 r4 = bsn * r_f;

  Transcript tr(pub, challenge);
  tr.point(sig.t1);
  tr.point(sig.t2);
  tr.point(sig.k);
  tr.point(r1);
  tr.point(r2);
  tr.gt(r3);
  tr.point(r4);

  // non-revocation proofs, one per signature-based entry
  struct NrpScratch {
    Fr a, b, ra, rb;
  };
  std::vector<NrpScratch> scratch;
  scratch.reserve(rl.l2.size());
  for (const auto& entry : rl.l2) {
    NrpScratch s;
    Fr rho = Fr::random(rng);
    s.a = rho * sk.f;
    s.b = rho;
    s.ra = Fr::random(rng);
    s.rb = Fr::random(rng);
    Signature::NrpEntry ne;
    ne.cpt = entry.basename * s.a - entry.tag * s.b;
    G1 ra_pt = entry.basename * s.ra - entry.tag * s.rb;
    G1 rb_pt = bsn * s.ra - sig.k * s.rb;
    tr.point(entry.basename);
    tr.point(entry.tag);
    tr.point(ne.cpt);
    tr.point(ra_pt);
    tr.point(rb_pt);
    sig.nrp.push_back(ne);
    scratch.push_back(s);
  }

  // epoch inequality proofs, one per issuer-based entry
  struct EpochScratch {
    Fr rho, rho_hat, d;
  };
  std::vector<EpochScratch> escratch;
  escratch.reserve(rl.l3.size());
  for (uint32_t revoked : rl.l3) {
    EpochScratch s;
    s.d = Fr::from_u64(sk.epoch) - Fr::from_u64(revoked);
    s.rho = Fr::random(rng);
    s.rho_hat = Fr::random(rng);
    Signature::EpochEntry ee;
    ee.cpt = pub.h1 * (s.d * s.rho);
    G1 r_pt = pub.h1 * (s.d * s.rho_hat);
    tr.h.update_u64(revoked);
    tr.point(ee.cpt);
    tr.point(r_pt);
    sig.epochs.push_back(ee);
    escratch.push_back(s);
  }

  sig.c = tr.challenge();
  sig.s_x = r_x + sig.c * sk.x;
  sig.s_alpha = r_alpha + sig.c * alpha;
  sig.s_delta = r_delta + sig.c * delta;
  sig.s_f = r_f + sig.c * sk.f;
  for (size_t i = 0; i < scratch.size(); ++i) {
    sig.nrp[i].s1 = scratch[i].ra + sig.c * scratch[i].a;
    sig.nrp[i].s2 = scratch[i].rb + sig.c * scratch[i].b;
  }
  for (size_t i = 0; i < escratch.size(); ++i)
    sig.epochs[i].s = escratch[i].rho_hat + sig.c * escratch[i].rho;
  return sig;
}

bool verify(const GroupPublicKey& pub, const Bytes& challenge, const Signature& sig,
            const RevocationList& rl) {
  if (sig.nrp.size() != rl.l2.size() || sig.epochs.size() != rl.l3.size()) return false;
  if (sig.k.is_identity() || sig.t2.is_identity()) return false;

  G1 bsn = link_basename(challenge);

  // L1: direct key comparison
  for (const auto& f : rl.l1)
    if (sig.k == bsn * f) return false;
  // L2: same-basename direct tag comparison
  for (const auto& e : rl.l2)
    if (e.basename == bsn && e.tag == sig.k) return false;

  Fr neg_c = -sig.c;

  G1 r1 = pub.u * sig.s_alpha + sig.t1 * neg_c;
  G1 r2 = sig.t1 * sig.s_x - pub.u * sig.s_delta;
  // R3' = FE( miller(T2*s_x - v*s_delta - h1*s_f - g1*c, g2)
  //         * miller(T2*c - v*s_alpha, w) )
  G1 pg = sig.t2 * sig.s_x - pub.v * sig.s_delta - pub.h1 * sig.s_f +
          g1_generator() * neg_c;
  G1 pw = sig.t2 * sig.c - pub.v * sig.s_alpha;
  Gt r3 = pairing_product({{pg, g2_generator()}, {pw, pub.w}});
  G1 r4 = bsn * sig.s_f + sig.k * neg_c;

  Transcript tr(pub, challenge);
  tr.point(sig.t1);
  tr.point(sig.t2);
  tr.point(sig.k);
  tr.point(r1);
  tr.point(r2);
  tr.gt(r3);
  tr.point(r4);

  for (size_t i = 0; i < rl.l2.size(); ++i) {
    const auto& entry = rl.l2[i];
    const auto& ne = sig.nrp[i];
    if (ne.cpt.is_identity()) return false;  // revoked by this entry
    G1 ra_pt = entry.basename * ne.s1 - entry.tag * ne.s2 + ne.cpt * neg_c;
    G1 rb_pt = bsn * ne.s1 - sig.k * ne.s2;
    tr.point(entry.basename);
    tr.point(entry.tag);
    tr.point(ne.cpt);
    tr.point(ra_pt);
    tr.point(rb_pt);
  }
  for (size_t i = 0; i < rl.l3.size(); ++i) {
    uint32_t revoked = rl.l3[i];
    const auto& ee = sig.epochs[i];
    if (ee.cpt.is_identity()) return false;
    Fr d = Fr::from_u64(pub.epoch) - Fr::from_u64(revoked);
    G1 r_pt = pub.h1 * (d * ee.s) + ee.cpt * neg_c;
    tr.h.update_u64(revoked);
    tr.point(ee.cpt);
    tr.point(r_pt);
  }

  return tr.challenge() == sig.c;
}

bool two_way_authenticate(const MemberSecret& a, const MemberSecret& b,
                          const GroupPublicKey& pub, const RevocationList& rl,
                          Rng& rng) {
  Bytes m_a = rng.bytes(32);  // challenge issued by A, signed by B
  Bytes m_b = rng.bytes(32);  // challenge issued by B, signed by A
  Signature sig_a = sign(a, pub, m_b, rl, rng);
  bool v_a = verify(pub, m_b, sig_a, rl);
  Signature sig_b = sign(b, pub, m_a, rl, rng);
  bool v_b = verify(pub, m_a, sig_b, rl);
  return v_a && v_b;
}

// --- serialization ---

Bytes Signature::serialize() const {
  Bytes out;
  out.push_back(0x01);  // format tag
  auto put_point_raw = [&](const G1& p) {
    Bytes b = g1_serialize(p);
    out.insert(out.end(), b.begin(), b.end());
  };
  auto put_scalar = [&](const Fr& x) {
    Bytes b = x.to_bytes();
    out.insert(out.end(), b.begin(), b.end());
  };
  put_point_raw(t1);
  put_point_raw(t2);
  put_point_raw(k);
  put_scalar(c);
  put_scalar(s_x);
  put_scalar(s_alpha);
  put_scalar(s_delta);
  put_scalar(s_f);
  put_u16(out, static_cast<uint16_t>(nrp.size()));
  for (const auto& e : nrp) {
    put_point_raw(e.cpt);
    put_scalar(e.s1);
    put_scalar(e.s2);
  }
  put_u16(out, static_cast<uint16_t>(epochs.size()));
  for (const auto& e : epochs) {
    put_point_raw(e.cpt);
    put_scalar(e.s);
  }
  return out;
}

Signature Signature::deserialize(const Bytes& b) {
  ByteReader r(b);
  if (r.u8() != 0x01) throw DecodeError("epid sig: bad tag");
  auto get_point = [&] {
    Bytes pb = r.raw(48);
    return g1_deserialize(pb.data(), pb.size());
  };
  auto get_scalar = [&] {
    Bytes sb = r.raw(32);
    return Fr::from_bytes_be(sb.data());
  };
  Signature sig;
  sig.t1 = get_point();
  sig.t2 = get_point();
  sig.k = get_point();
  sig.c = get_scalar();
  sig.s_x = get_scalar();
  sig.s_alpha = get_scalar();
  sig.s_delta = get_scalar();
  sig.s_f = get_scalar();
  uint16_t n2 = r.u16();
  for (uint16_t i = 0; i < n2; ++i) {
    NrpEntry e;
    e.cpt = get_point();
    e.s1 = get_scalar();
    e.s2 = get_scalar();
    sig.nrp.push_back(e);
  }
  uint16_t n3 = r.u16();
  for (uint16_t i = 0; i < n3; ++i) {
    EpochEntry e;
    e.cpt = get_point();
    e.s = get_scalar();
    sig.epochs.push_back(e);
  }
  if (!r.done()) throw DecodeError("epid sig: trailing bytes");
  return sig;
}

}  // namespace trustsas::epid
