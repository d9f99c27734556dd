#include "trustsas/crypto/fields.hpp"

namespace trustsas::crypto {

namespace {

const Limbs<6> kP = {0xb9feffffffffaaabull, 0x1eabfffeb153ffffull, 0x6730d2a0f6b0f624ull,
                     0x64774b84f38512bfull, 0x4b1ba7b6434bacd7ull, 0x1a0111ea397fe69aull};
const Limbs<4> kR = {0xffffffff00000001ull, 0x53bda402fffe5bfeull, 0x3339d80809a1d805ull,
                     0x73eda753299d7d48ull};

struct FpDomainHolder {
  MontDomain<6> d;
  Limbs<6> sqrt_exp;  // (p+1)/4
  FpDomainHolder() {
    d.init(kP);
    Limbs<6> e = kP;
    // p+1 (no carry out of the top limb: p's top limb is small)
    unsigned __int128 carry = 1;
    for (size_t i = 0; i < 6; ++i) {
      unsigned __int128 s = (unsigned __int128)e[i] + carry;
      e[i] = (uint64_t)s;
      carry = s >> 64;
    }
    // /4
    for (size_t i = 0; i < 6; ++i) {
      uint64_t next = (i + 1 < 6) ? e[i + 1] : 0;
      e[i] = (e[i] >> 2) | (next << 62);
    }
    sqrt_exp = e;
  }
};

const FpDomainHolder& fp_holder() {
  static const FpDomainHolder h;
  return h;
}

}  // namespace

const MontDomain<6>& FpTag::domain() { return fp_holder().d; }

const MontDomain<4>& FrTag::domain() {
  static const MontDomain<4>* d = [] {
    auto* p = new MontDomain<4>();
    p->init(kR);
    return p;
  }();
  return *d;
}

std::optional<Fp> fp_sqrt(const Fp& a) {
  if (a.is_zero()) return Fp::zero();
  Fp s = a.pow(fp_holder().sqrt_exp, 382);
  if (s.square() != a) return std::nullopt;
  return s;
}

std::optional<Fp2> fp2_sqrt(const Fp2& a) {
  if (a.is_zero()) return Fp2::zero();
  if (a.c1.is_zero()) {
    if (auto s = fp_sqrt(a.c0)) return Fp2{*s, Fp::zero()};
    auto s = fp_sqrt(-a.c0);  // (t*u)^2 = -t^2
    if (!s) return std::nullopt;
    return Fp2{Fp::zero(), *s};
  }
  Fp norm = a.c0.square() + a.c1.square();
  auto s = fp_sqrt(norm);
  if (!s) return std::nullopt;
  Fp half = Fp::from_u64(2).inverse();
  Fp t2 = (a.c0 + *s) * half;
  auto t = fp_sqrt(t2);
  if (!t) {
    t2 = (a.c0 - *s) * half;
    t = fp_sqrt(t2);
    if (!t) return std::nullopt;
  }
  Fp b = a.c1 * half * t->inverse();
  Fp2 r{*t, b};
  if (r.square() != a) return std::nullopt;
  return r;
}

namespace {

// Frobenius^2 slot multipliers gamma_i = Norm((1+u)^((p^2-1)/6))^i, all in Fp.
// Slot order follows W^i with W^2 = v, W^6 = 1+u.
const Limbs<6> kFrob2[5] = {
    {0x2e01fffffffeffffull, 0xde17d813620a0002ull, 0xddb3a93be6f89688ull,
     0xba69c6076a0f77eaull, 0x5f19672fdf76ce51ull, 0x0000000000000000ull},
    {0x2e01fffffffefffeull, 0xde17d813620a0002ull, 0xddb3a93be6f89688ull,
     0xba69c6076a0f77eaull, 0x5f19672fdf76ce51ull, 0x0000000000000000ull},
    {0xb9feffffffffaaaaull, 0x1eabfffeb153ffffull, 0x6730d2a0f6b0f624ull,
     0x64774b84f38512bfull, 0x4b1ba7b6434bacd7ull, 0x1a0111ea397fe69aull},
    {0x8bfd00000000aaacull, 0x409427eb4f49fffdull, 0x897d29650fb85f9bull,
     0xaa0d857d89759ad4ull, 0xec02408663d4de85ull, 0x1a0111ea397fe699ull},
    {0x8bfd00000000aaadull, 0x409427eb4f49fffdull, 0x897d29650fb85f9bull,
     0xaa0d857d89759ad4ull, 0xec02408663d4de85ull, 0x1a0111ea397fe699ull}};

struct Frob2Holder {
  Fp g[5];
  Frob2Holder() {
    for (int i = 0; i < 5; ++i) {
      Fp x;
      x.v = kFrob2[i];
      mont_mul(x.v, x.v, Fp::D().r2, Fp::D());
      g[i] = x;
    }
  }
};

const Frob2Holder& frob2() {
  static const Frob2Holder h;
  return h;
}

}  // namespace

namespace {

// Fp4 square with V^2 = v-slot nonresidue xi: (a + bV)^2
inline void fp4_square(const Fp2& a, const Fp2& b, Fp2& c0, Fp2& c1) {
  Fp2 t0 = a.square();
  Fp2 t1 = b.square();
  c0 = t1.mul_by_xi() + t0;
  c1 = (a + b).square() - t0 - t1;
}

}  // namespace

Fp12 Fp12::cyclotomic_square() const {
  Fp2 z0 = c0.c0, z4 = c0.c1, z3 = c0.c2;
  Fp2 z2 = c1.c0, z1 = c1.c1, z5 = c1.c2;

  Fp2 t0, t1, t2, t3;
  fp4_square(z0, z1, t0, t1);
  z0 = (t0 - z0).dbl() + t0;
  z1 = (t1 + z1).dbl() + t1;

  fp4_square(z2, z3, t0, t1);
  fp4_square(z4, z5, t2, t3);

  z4 = (t0 - z4).dbl() + t0;
  z5 = (t1 + z5).dbl() + t1;

  Fp2 t3x = t3.mul_by_xi();
  z2 = (t3x + z2).dbl() + t3x;
  z3 = (t2 - z3).dbl() + t2;

  return {{z0, z4, z3}, {z2, z1, z5}};
}

Fp12 Fp12::frobenius_sq() const {
  const auto& g = frob2().g;
  Fp12 r;
  r.c0.c0 = c0.c0;            // W^0
  r.c1.c0 = c1.c0.scale(g[0]);  // W^1
  r.c0.c1 = c0.c1.scale(g[1]);  // W^2
  r.c1.c1 = c1.c1.scale(g[2]);  // W^3
  r.c0.c2 = c0.c2.scale(g[3]);  // W^4
  r.c1.c2 = c1.c2.scale(g[4]);  // W^5
  return r;
}

}  // namespace trustsas::crypto
