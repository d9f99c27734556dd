#include "trustsas/crypto/bls12_381.hpp"

#include <cstring>

#include "trustsas/crypto/sha256.hpp"

namespace trustsas::crypto {

namespace ops {
uint64_t& exp_counter() {
  thread_local uint64_t c = 0;
  return c;
}
}  // namespace ops

namespace {

Fp fp_from_raw(const Limbs<6>& raw) {
  Fp x;
  x.v = raw;
  mont_mul(x.v, x.v, Fp::D().r2, Fp::D());
  return x;
}

const Limbs<6> kG1X = {0xfb3af00adb22c6bbull, 0x6c55e83ff97a1aefull, 0xa14e3a3f171bac58ull,
                       0xc3688c4f9774b905ull, 0x2695638c4fa9ac0full, 0x17f1d3a73197d794ull};
const Limbs<6> kG1Y = {0x0caa232946c5e7e1ull, 0xd03cc744a2888ae4ull, 0x00db18cb2c04b3edull,
                       0xfcf5e095d5d00af6ull, 0xa09e30ed741d8ae4ull, 0x08b3f481e3aaa0f1ull};
const Limbs<6> kG2X0 = {0xd48056c8c121bdb8ull, 0x0bac0326a805bbefull, 0xb4510b647ae3d177ull,
                        0xc6e47ad4fa403b02ull, 0x260805272dc51051ull, 0x024aa2b2f08f0a91ull};
const Limbs<6> kG2X1 = {0xe5ac7d055d042b7eull, 0x334cf11213945d57ull, 0xb5da61bbdc7f5049ull,
                        0x596bd0d09920b61aull, 0x7dacd3a088274f65ull, 0x13e02b6052719f60ull};
const Limbs<6> kG2Y0 = {0xe193548608b82801ull, 0x923ac9cc3baca289ull, 0x6d429a695160d12cull,
                        0xadfd9baa8cbdd3a7ull, 0x8cc9cdc6da2e351aull, 0x0ce5d527727d6e11ull};
const Limbs<6> kG2Y1 = {0xaaa9075ff05f79beull, 0x3f370d275cec1da1ull, 0x267492ab572e99abull,
                        0xcb3e287e85a763afull, 0x32acd2b02bc28b99ull, 0x0606c4a02ea734ccull};

// group order r (for subgroup checks)
const Limbs<4> kOrder = {0xffffffff00000001ull, 0x53bda402fffe5bfeull,
                         0x3339d80809a1d805ull, 0x73eda753299d7d48ull};
// G1 cofactor
const Limbs<2> kG1Cofactor = {0x8c00aaab0000aaabull, 0x396c8c005555e156ull};

// |z| for the Miller loop, z = -0xd201000000010000
constexpr uint64_t kAbsZ = 0xd201000000010000ull;

// hard part exponent (p^4 - p^2 + 1) / r, 1268 bits
const Limbs<20> kHardExp = {
    0xe516c3f438e3ba79ull, 0xfa9912aae208ccf1ull, 0x905ce937335d5b68ull,
    0xc71a2629b0dea236ull, 0x83774940996754c8ull, 0x21d160aeb6a1e799ull,
    0x2ed0b283ed237db4ull, 0x915c97f36c6f1821ull, 0x67f17fcbde783765ull,
    0x2378b9039096d1b7ull, 0x7988f8761bdc51dcull, 0x2076995003fc77a1ull,
    0x827eca0ba621315bull, 0xe5a72bce8d63cb9full, 0xf68f7764c28b6f8aull,
    0x2f230063cf081517ull, 0x94506632528d6a9aull, 0xd3cde88eeb996ca3ull,
    0xc0bd38c3195c899eull, 0x000f686b3d807d01ull};

const Fp& curve_b1() {
  static const Fp b = Fp::from_u64(4);
  return b;
}
const Fp2& curve_b2() {
  static const Fp2 b = Fp2{Fp::from_u64(4), Fp::from_u64(4)};
  return b;
}

}  // namespace

const G1& g1_generator() {
  static const G1 g = G1::from_affine(fp_from_raw(kG1X), fp_from_raw(kG1Y));
  return g;
}

const G2& g2_generator() {
  static const G2 g = G2::from_affine(Fp2{fp_from_raw(kG2X0), fp_from_raw(kG2X1)},
                                      Fp2{fp_from_raw(kG2Y0), fp_from_raw(kG2Y1)});
  return g;
}

bool g1_in_subgroup(const G1& p) { return p.mul_limbs(kOrder, 255).is_identity(); }
bool g2_in_subgroup(const G2& p) { return p.mul_limbs(kOrder, 255).is_identity(); }

bool g1_on_curve_affine(const Fp& x, const Fp& y) {
  return y.square() == x.square() * x + curve_b1();
}
bool g2_on_curve_affine(const Fp2& x, const Fp2& y) {
  return y.square() == x.square() * x + curve_b2();
}

// --- serialization ---
// 48-byte (G1) / 96-byte (G2) compressed form; flag bits in the top three
// bits of the first byte: compressed, infinity, y-is-lexicographically-greater.

namespace {

bool fp_lex_gt_neg(const Fp& y) {
  Fp ny = -y;
  return cmp_limbs(y.canonical(), ny.canonical()) > 0;
}
bool fp2_lex_gt_neg(const Fp2& y) {
  Fp2 ny = -y;
  auto a1 = y.c1.canonical(), b1 = ny.c1.canonical();
  int c = cmp_limbs(a1, b1);
  if (c != 0) return c > 0;
  return cmp_limbs(y.c0.canonical(), ny.c0.canonical()) > 0;
}

}  // namespace

Bytes g1_serialize(const G1& p) {
  Bytes out(48, 0);
  if (p.is_identity()) {
    out[0] = 0xc0;
    return out;
  }
  auto [x, y] = p.to_affine();
  x.to_bytes_be(out.data());
  out[0] |= 0x80;
  if (fp_lex_gt_neg(y)) out[0] |= 0x20;
  return out;
}

Bytes g2_serialize(const G2& p) {
  Bytes out(96, 0);
  if (p.is_identity()) {
    out[0] = 0xc0;
    return out;
  }
  auto [x, y] = p.to_affine();
  x.c1.to_bytes_be(out.data());
  x.c0.to_bytes_be(out.data() + 48);
  out[0] |= 0x80;
  if (fp2_lex_gt_neg(y)) out[0] |= 0x20;
  return out;
}

G1 g1_deserialize(const uint8_t* b, size_t n) {
  if (n != 48) throw DecodeError("g1: bad length");
  uint8_t flags = b[0] & 0xe0;
  if (!(flags & 0x80)) throw DecodeError("g1: uncompressed flag");
  if (flags & 0x40) {
    for (size_t i = 1; i < 48; ++i)
      if (b[i]) throw DecodeError("g1: bad infinity encoding");
    if ((b[0] & 0x3f) != 0) throw DecodeError("g1: bad infinity encoding");
    return G1::identity();
  }
  uint8_t buf[48];
  std::memcpy(buf, b, 48);
  buf[0] &= 0x1f;
  Fp x = Fp::from_bytes_be(buf);
  auto y2 = x.square() * x + curve_b1();
  auto y = fp_sqrt(y2);
  if (!y) throw DecodeError("g1: x not on curve");
  Fp yy = *y;
  if (fp_lex_gt_neg(yy) != bool(flags & 0x20)) yy = -yy;
  G1 p = G1::from_affine(x, yy);
  if (!g1_in_subgroup(p)) throw DecodeError("g1: not in subgroup");
  return p;
}

G2 g2_deserialize(const uint8_t* b, size_t n) {
  if (n != 96) throw DecodeError("g2: bad length");
  uint8_t flags = b[0] & 0xe0;
  if (!(flags & 0x80)) throw DecodeError("g2: uncompressed flag");
  if (flags & 0x40) {
    for (size_t i = 1; i < 96; ++i)
      if (b[i]) throw DecodeError("g2: bad infinity encoding");
    if ((b[0] & 0x3f) != 0) throw DecodeError("g2: bad infinity encoding");
    return G2::identity();
  }
  uint8_t buf[48];
  std::memcpy(buf, b, 48);
  buf[0] &= 0x1f;
  Fp x1 = Fp::from_bytes_be(buf);
  Fp x0 = Fp::from_bytes_be(b + 48);
  Fp2 x{x0, x1};
  Fp2 y2 = x.square() * x + curve_b2();
  auto y = fp2_sqrt(y2);
  if (!y) throw DecodeError("g2: x not on curve");
  Fp2 yy = *y;
  if (fp2_lex_gt_neg(yy) != bool(flags & 0x20)) yy = -yy;
  G2 p = G2::from_affine(x, yy);
  if (!g2_in_subgroup(p)) throw DecodeError("g2: not in subgroup");
  return p;
}

// --- hashing ---

G1 hash_to_g1(const Bytes& msg, const std::string& domain) {
  for (uint32_t ctr = 0; ctr < 256; ++ctr) {
    Sha256 h1;
    h1.update(domain).update(msg).update_u64(ctr).update_u64(0);
    Digest d1 = h1.finish();
    Sha256 h2;
    h2.update(domain).update(msg).update_u64(ctr).update_u64(1);
    Digest d2 = h2.finish();
    uint8_t wide[64];
    std::memcpy(wide, d1.data(), 32);
    std::memcpy(wide + 32, d2.data(), 32);
    Fp x = Fp::from_bytes_wide(wide, 64);
    Fp y2 = x.square() * x + curve_b1();
    auto y = fp_sqrt(y2);
    if (!y) continue;
    Fp yy = *y;
    bool want_odd = d1[0] & 1;
    if ((yy.canonical()[0] & 1) != (want_odd ? 1u : 0u)) yy = -yy;
    G1 p = G1::from_affine(x, yy).mul_limbs(kG1Cofactor, 126);
    if (!p.is_identity()) return p;
  }
  throw Error("hash_to_g1: no point found");
}

Fr hash_to_fr(const Bytes& msg, const std::string& domain) {
  Sha256 h1;
  h1.update(domain).update(msg).update_u64(0);
  Digest d1 = h1.finish();
  Sha256 h2;
  h2.update(domain).update(msg).update_u64(1);
  Digest d2 = h2.finish();
  uint8_t wide[64];
  std::memcpy(wide, d1.data(), 32);
  std::memcpy(wide + 32, d2.data(), 32);
  return Fr::from_bytes_wide(wide, 64);
}

// --- pairing ---
// Optimal ate Miller loop with affine steps on the twist. The line through
// the untwisted points, evaluated at P and scaled by xi, occupies slots
// 1 (c0.c0), vw (c1.c1) and v^2 w (c1.c2):
//   L = xi*yP + (lambda*x1 - y1)*vw - (lambda*xP)*v^2 w

namespace {

struct MillerState {
  Fp2 tx, ty;  // current T, twist affine
  Fp2 qx, qy;  // base point Q
  Fp px, py;   // G1 argument, affine
};

Fp12 line_eval(const Fp2& lambda, const Fp2& x1, const Fp2& y1, const Fp& px,
               const Fp& py) {
  Fp12 l;
  l.c0.c0 = Fp2{py, py};  // xi * yP = (1+u)*yP
  l.c1.c1 = lambda * x1 - y1;
  l.c1.c2 = -(lambda.scale(px));
  return l;
}

void miller_dbl(MillerState& s, Fp12& f) {
  Fp2 x1 = s.tx, y1 = s.ty;
  Fp2 lambda = (x1.square() * Fp2{Fp::from_u64(3), Fp::zero()}) * (y1.dbl()).inverse();
  f = f * line_eval(lambda, x1, y1, s.px, s.py);
  Fp2 x3 = lambda.square() - x1.dbl();
  Fp2 y3 = lambda * (x1 - x3) - y1;
  s.tx = x3;
  s.ty = y3;
}

void miller_add(MillerState& s, Fp12& f) {
  Fp2 x1 = s.tx, y1 = s.ty;
  Fp2 x2 = s.qx, y2 = s.qy;
  Fp2 lambda = (y2 - y1) * (x2 - x1).inverse();
  f = f * line_eval(lambda, x1, y1, s.px, s.py);
  Fp2 x3 = lambda.square() - x1 - x2;
  Fp2 y3 = lambda * (x1 - x3) - y1;
  s.tx = x3;
  s.ty = y3;
}

Fp12 miller_loop_affine(const Fp& px, const Fp& py, const Fp2& qx, const Fp2& qy) {
  MillerState s{qx, qy, qx, qy, px, py};
  Fp12 f = Fp12::one();
  for (int i = 62; i >= 0; --i) {
    f = f.square();
    miller_dbl(s, f);
    if ((kAbsZ >> i) & 1) miller_add(s, f);
  }
  return f.conj();  // z < 0
}

}  // namespace

Fp12 miller_loop(const G1& p, const G2& q) {
  if (p.is_identity() || q.is_identity()) return Fp12::one();
  auto [px, py] = p.to_affine();
  auto [qx, qy] = q.to_affine();
  return miller_loop_affine(px, py, qx, qy);
}

Fp12 final_exponentiation(const Fp12& f) {
  Fp12 g = f.conj() * f.inverse();  // ^(p^6 - 1)
  g = g.frobenius_sq() * g;         // ^(p^2 + 1), now cyclotomic
  return g.pow_cyclotomic(kHardExp, 1268);
}

Gt pairing(const G1& p, const G2& q) { return {final_exponentiation(miller_loop(p, q))}; }

Gt pairing_product(const std::vector<std::pair<G1, G2>>& pairs) {
  Fp12 acc = Fp12::one();
  for (const auto& [p, q] : pairs) acc = acc * miller_loop(p, q);
  return {final_exponentiation(acc)};
}

bool pairing_product_is_one(const std::vector<std::pair<G1, G2>>& pairs) {
  return pairing_product(pairs).v.is_one();
}

Bytes Gt::serialize() const {
  Bytes out;
  out.reserve(576);
  const Fp2* slots[6] = {&v.c0.c0, &v.c0.c1, &v.c0.c2, &v.c1.c0, &v.c1.c1, &v.c1.c2};
  for (const Fp2* s : slots) {
    Bytes a = s->c0.to_bytes();
    Bytes b = s->c1.to_bytes();
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

Gt Gt::deserialize(const uint8_t* b, size_t n) {
  if (n != 576) throw DecodeError("gt: bad length");
  Gt g;
  Fp2* slots[6] = {&g.v.c0.c0, &g.v.c0.c1, &g.v.c0.c2,
                   &g.v.c1.c0, &g.v.c1.c1, &g.v.c1.c2};
  size_t off = 0;
  for (Fp2* s : slots) {
    s->c0 = Fp::from_bytes_be(b + off);
    s->c1 = Fp::from_bytes_be(b + off + 48);
    off += 96;
  }
  return g;
}

}  // namespace trustsas::crypto
