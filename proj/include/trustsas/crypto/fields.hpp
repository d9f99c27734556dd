#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "trustsas/support.hpp"

namespace trustsas::crypto {

template <size_t N>
using Limbs = std::array<uint64_t, N>;

template <size_t N>
int cmp_limbs(const Limbs<N>& a, const Limbs<N>& b) {
  for (size_t i = N; i-- > 0;) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

template <size_t N>
bool limbs_bit(const Limbs<N>& a, size_t i) {
  return (a[i / 64] >> (i % 64)) & 1;
}

// Montgomery domain for an odd modulus with headroom in the top limb.
template <size_t N>
struct MontDomain {
  Limbs<N> mod{};
  Limbs<N> r2{};        // R^2 mod m, R = 2^(64N)
  Limbs<N> mont_one{};  // R mod m
  Limbs<N> exp_inv{};   // m - 2, Fermat inversion exponent
  uint64_t n0inv = 0;   // -m^{-1} mod 2^64
  size_t bits = 0;

  void init(const Limbs<N>& m) {
    mod = m;
    // n0inv by Newton iteration mod 2^64
    uint64_t inv = 1;
    for (int i = 0; i < 6; ++i) inv *= 2 - m[0] * inv;
    n0inv = ~inv + 1;

    // R mod m by 64N doublings of 1, then 64N more for R^2
    Limbs<N> x{};
    x[0] = 1;
    mod_sub_if_ge(x);
    for (size_t i = 0; i < 64 * N; ++i) dbl_mod(x);
    mont_one = x;
    for (size_t i = 0; i < 64 * N; ++i) dbl_mod(x);
    r2 = x;

    exp_inv = m;
    // subtract 2 (m is odd and > 2)
    exp_inv[0] -= 2;

    bits = 64 * N;
    while (bits > 0 && !limbs_bit(mod, bits - 1)) --bits;
  }

  void dbl_mod(Limbs<N>& x) const {
    uint64_t carry = 0;
    for (size_t i = 0; i < N; ++i) {
      uint64_t hi = x[i] >> 63;
      x[i] = (x[i] << 1) | carry;
      carry = hi;
    }
    if (carry || cmp_limbs(x, mod) >= 0) sub_raw(x, mod);
  }

  void mod_sub_if_ge(Limbs<N>& x) const {
    if (cmp_limbs(x, mod) >= 0) sub_raw(x, mod);
  }

  static void sub_raw(Limbs<N>& a, const Limbs<N>& b) {
    unsigned __int128 borrow = 0;
    for (size_t i = 0; i < N; ++i) {
      unsigned __int128 d = (unsigned __int128)a[i] - b[i] - borrow;
      a[i] = (uint64_t)d;
      borrow = (d >> 64) & 1;
    }
  }
};

// CIOS Montgomery multiplication
template <size_t N>
void mont_mul(Limbs<N>& out, const Limbs<N>& a, const Limbs<N>& b,
              const MontDomain<N>& D) {
  uint64_t t[N + 2] = {0};
  for (size_t i = 0; i < N; ++i) {
    unsigned __int128 carry = 0;
    for (size_t j = 0; j < N; ++j) {
      unsigned __int128 s = (unsigned __int128)a[j] * b[i] + t[j] + carry;
      t[j] = (uint64_t)s;
      carry = s >> 64;
    }
    unsigned __int128 s = (unsigned __int128)t[N] + carry;
    t[N] = (uint64_t)s;
    t[N + 1] = (uint64_t)(s >> 64);

    uint64_t m = t[0] * D.n0inv;
    carry = ((unsigned __int128)m * D.mod[0] + t[0]) >> 64;
    for (size_t j = 1; j < N; ++j) {
      unsigned __int128 s2 = (unsigned __int128)m * D.mod[j] + t[j] + carry;
      t[j - 1] = (uint64_t)s2;
      carry = s2 >> 64;
    }
    unsigned __int128 s3 = (unsigned __int128)t[N] + carry;
    t[N - 1] = (uint64_t)s3;
    t[N] = t[N + 1] + (uint64_t)(s3 >> 64);
    t[N + 1] = 0;
  }
  Limbs<N> r;
  for (size_t i = 0; i < N; ++i) r[i] = t[i];
  if (t[N] != 0 || cmp_limbs(r, D.mod) >= 0) MontDomain<N>::sub_raw(r, D.mod);
  out = r;
}

// Prime-field element in Montgomery form. Tag supplies the modulus.
template <typename Tag>
class Fq {
 public:
  static constexpr size_t N = Tag::N;
  Limbs<N> v{};

  static const MontDomain<N>& D() { return Tag::domain(); }

  static Fq zero() { return Fq{}; }
  static Fq one() {
    Fq r;
    r.v = D().mont_one;
    return r;
  }
  static Fq from_u64(uint64_t x) {
    Fq r;
    r.v[0] = x;
    mont_mul(r.v, r.v, D().r2, D());
    return r;
  }
  // big-endian bytes of arbitrary length, reduced mod m (Horner)
  static Fq from_bytes_wide(const uint8_t* b, size_t n) {
    Fq b256 = from_u64(256);
    Fq acc = zero();
    for (size_t i = 0; i < n; ++i) acc = acc * b256 + from_u64(b[i]);
    return acc;
  }
  // strict fixed-width big-endian decode, must be < modulus
  static Fq from_bytes_be(const uint8_t* b) {
    Limbs<N> raw{};
    for (size_t i = 0; i < N; ++i) {
      uint64_t limb = 0;
      for (size_t k = 0; k < 8; ++k) limb = (limb << 8) | b[(N - 1 - i) * 8 + k];
      raw[i] = limb;
    }
    if (cmp_limbs(raw, D().mod) >= 0) throw DecodeError("field element out of range");
    Fq r;
    r.v = raw;
    mont_mul(r.v, r.v, D().r2, D());
    return r;
  }

  Limbs<N> canonical() const {
    Limbs<N> one_raw{};
    one_raw[0] = 1;
    Limbs<N> out;
    mont_mul(out, v, one_raw, D());
    return out;
  }

  void to_bytes_be(uint8_t* out) const {
    Limbs<N> c = canonical();
    for (size_t i = 0; i < N; ++i) {
      uint64_t limb = c[N - 1 - i];
      for (size_t k = 0; k < 8; ++k) out[i * 8 + k] = (uint8_t)(limb >> (8 * (7 - k)));
    }
  }
  Bytes to_bytes() const {
    Bytes b(8 * N);
    to_bytes_be(b.data());
    return b;
  }

  bool is_zero() const {
    for (auto l : v)
      if (l) return false;
    return true;
  }
  bool operator==(const Fq& o) const { return v == o.v; }
  bool operator!=(const Fq& o) const { return !(*this == o); }

  Fq operator+(const Fq& o) const {
    Fq r;
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < N; ++i) {
      unsigned __int128 s = (unsigned __int128)v[i] + o.v[i] + carry;
      r.v[i] = (uint64_t)s;
      carry = s >> 64;
    }
    if (carry || cmp_limbs(r.v, D().mod) >= 0) MontDomain<N>::sub_raw(r.v, D().mod);
    return r;
  }
  Fq operator-(const Fq& o) const {
    Fq r = *this;
    unsigned __int128 borrow = 0;
    for (size_t i = 0; i < N; ++i) {
      unsigned __int128 d = (unsigned __int128)r.v[i] - o.v[i] - borrow;
      r.v[i] = (uint64_t)d;
      borrow = (d >> 64) & 1;
    }
    if (borrow) {
      unsigned __int128 carry = 0;
      for (size_t i = 0; i < N; ++i) {
        unsigned __int128 s = (unsigned __int128)r.v[i] + D().mod[i] + carry;
        r.v[i] = (uint64_t)s;
        carry = s >> 64;
      }
    }
    return r;
  }
  Fq operator-() const { return zero() - *this; }
  Fq operator*(const Fq& o) const {
    Fq r;
    mont_mul(r.v, v, o.v, D());
    return r;
  }
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }

  Fq square() const { return *this * *this; }
  Fq dbl() const { return *this + *this; }

  template <size_t M>
  Fq pow(const Limbs<M>& e, size_t ebits) const {
    Fq acc = one();
    bool started = false;
    for (size_t i = ebits; i-- > 0;) {
      if (started) acc = acc.square();
      if (limbs_bit(e, i)) {
        if (started)
          acc = acc * *this;
        else {
          acc = *this;
          started = true;
        }
      }
    }
    return started ? acc : one();
  }

  Fq inverse() const {
    if (is_zero()) throw ParamError("field inverse of zero");
    return pow(D().exp_inv, D().bits);
  }

  // uniform random element
  static Fq random(Rng& rng) {
    const auto& mod = D().mod;
    size_t topbits = D().bits - 64 * (N - 1);
    uint64_t mask = topbits >= 64 ? ~0ull : ((1ull << topbits) - 1);
    Limbs<N> raw;
    do {
      for (size_t i = 0; i < N; ++i) raw[i] = rng.next_u64();
      raw[N - 1] &= mask;
    } while (cmp_limbs(raw, mod) >= 0);
    Fq r;
    r.v = raw;
    mont_mul(r.v, r.v, D().r2, D());
    return r;
  }
};

// --- concrete fields for BLS12-381 ---

struct FpTag {
  static constexpr size_t N = 6;
  static const MontDomain<6>& domain();
};
struct FrTag {
  static constexpr size_t N = 4;
  static const MontDomain<4>& domain();
};

using Fp = Fq<FpTag>;
using Fr = Fq<FrTag>;

// sqrt in Fp (p = 3 mod 4); empty if not a square
std::optional<Fp> fp_sqrt(const Fp& a);

// --- quadratic/sextic/dodecic tower over Fp ---
// Fp2 = Fp[u]/(u^2+1); Fp6 = Fp2[v]/(v^3 - xi), xi = 1+u; Fp12 = Fp6[w]/(w^2 - v)

struct Fp2 {
  Fp c0, c1;  // c0 + c1*u

  static Fp2 zero() { return {}; }
  static Fp2 one() { return {Fp::one(), Fp::zero()}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool operator==(const Fp2& o) const { return c0 == o.c0 && c1 == o.c1; }
  bool operator!=(const Fp2& o) const { return !(*this == o); }

  Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  Fp2 operator-() const { return {-c0, -c1}; }
  Fp2 operator*(const Fp2& o) const {
    Fp m0 = c0 * o.c0;
    Fp m1 = c1 * o.c1;
    Fp m2 = (c0 + c1) * (o.c0 + o.c1);
    return {m0 - m1, m2 - m0 - m1};
  }
  Fp2 square() const {
    Fp t0 = (c0 + c1) * (c0 - c1);
    Fp t1 = (c0 * c1).dbl();
    return {t0, t1};
  }
  Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }
  Fp2 conj() const { return {c0, -c1}; }
  Fp2 scale(const Fp& k) const { return {c0 * k, c1 * k}; }
  Fp2 mul_by_xi() const {  // * (1+u)
    return {c0 - c1, c0 + c1};
  }
  Fp2 inverse() const {
    Fp norm = c0.square() + c1.square();
    Fp ninv = norm.inverse();
    return {c0 * ninv, -(c1 * ninv)};
  }
  static Fp2 random(Rng& rng) { return {Fp::random(rng), Fp::random(rng)}; }
};

std::optional<Fp2> fp2_sqrt(const Fp2& a);

struct Fp6 {
  Fp2 c0, c1, c2;  // c0 + c1*v + c2*v^2

  static Fp6 zero() { return {}; }
  static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  bool operator==(const Fp6& o) const {
    return c0 == o.c0 && c1 == o.c1 && c2 == o.c2;
  }

  Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  Fp6 operator-() const { return {-c0, -c1, -c2}; }
  Fp6 operator*(const Fp6& o) const {
    Fp2 d0 = c0 * o.c0;
    Fp2 d1 = c1 * o.c1;
    Fp2 d2 = c2 * o.c2;
    Fp2 t0 = (c1 + c2) * (o.c1 + o.c2) - d1 - d2;  // a1b2+a2b1
    Fp2 t1 = (c0 + c1) * (o.c0 + o.c1) - d0 - d1;  // a0b1+a1b0
    Fp2 t2 = (c0 + c2) * (o.c0 + o.c2) - d0 - d2;  // a0b2+a2b0
    return {d0 + t0.mul_by_xi(), t1 + d2.mul_by_xi(), t2 + d1};
  }
  Fp6 square() const { return *this * *this; }
  Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }
  Fp6 inverse() const {
    Fp2 a0 = c0.square() - (c1 * c2).mul_by_xi();
    Fp2 a1 = c2.square().mul_by_xi() - c0 * c1;
    Fp2 a2 = c1.square() - c0 * c2;
    Fp2 t = ((c2 * a1 + c1 * a2).mul_by_xi() + c0 * a0).inverse();
    return {a0 * t, a1 * t, a2 * t};
  }
};

struct Fp12 {
  Fp6 c0, c1;  // c0 + c1*w

  static Fp12 zero() { return {}; }
  static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }
  bool is_one() const { return *this == one(); }
  bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }
  bool operator!=(const Fp12& o) const { return !(*this == o); }

  Fp12 operator*(const Fp12& o) const {
    Fp6 d0 = c0 * o.c0;
    Fp6 d1 = c1 * o.c1;
    Fp6 t = (c0 + c1) * (o.c0 + o.c1) - d0 - d1;
    return {d0 + d1.mul_by_v(), t};
  }
  Fp12 square() const {
    Fp6 t = c0 * c1;
    Fp6 a = (c0 + c1) * (c0 + c1.mul_by_v()) - t - t.mul_by_v();
    return {a, t + t};
  }
  Fp12 conj() const { return {c0, -c1}; }  // = x^(p^6)
  Fp12 inverse() const {
    Fp6 t = (c0.square() - c1.square().mul_by_v()).inverse();
    return {c0 * t, -(c1 * t)};
  }
  // x^(p^2) via precomputed Fp coefficients on the W^i slots
  Fp12 frobenius_sq() const;

  // Granger-Scott squaring; valid only in the cyclotomic subgroup
  // (images of the easy final-exponentiation part)
  Fp12 cyclotomic_square() const;

  // NAF exponentiation using conj() as the cheap unitary inverse;
  // same subgroup restriction as cyclotomic_square
  template <size_t M>
  Fp12 pow_cyclotomic(const Limbs<M>& e, size_t ebits) const;

  template <size_t M>
  Fp12 pow(const Limbs<M>& e, size_t ebits) const {
    Fp12 acc = one();
    bool started = false;
    for (size_t i = ebits; i-- > 0;) {
      if (started) acc = acc.square();
      if (limbs_bit(e, i)) {
        if (started)
          acc = acc * *this;
        else {
          acc = *this;
          started = true;
        }
      }
    }
    return started ? acc : one();
  }
};

// non-adjacent form digits, least significant first
template <size_t M>
std::vector<int8_t> naf_digits(const Limbs<M>& e) {
  std::vector<uint64_t> x(e.begin(), e.end());
  auto is_zero = [&] {
    for (auto l : x)
      if (l) return false;
    return true;
  };
  auto shr1 = [&] {
    for (size_t i = 0; i + 1 < x.size(); ++i) x[i] = (x[i] >> 1) | (x[i + 1] << 63);
    x.back() >>= 1;
  };
  std::vector<int8_t> out;
  while (!is_zero()) {
    if (x[0] & 1) {
      int8_t d = static_cast<int8_t>(2 - static_cast<int>(x[0] & 3));  // 1 or -1
      out.push_back(d);
      if (d == 1) {
        // subtract 1
        size_t i = 0;
        while (x[i] == 0) x[i++] = ~0ull;
        x[i] -= 1;
      } else {
        // add 1
        size_t i = 0;
        while (true) {
          if (++x[i] != 0) break;
          ++i;
          if (i == x.size()) {
            x.push_back(0);
            break;
          }
        }
      }
    } else {
      out.push_back(0);
    }
    shr1();
  }
  return out;
}

template <size_t M>
Fp12 Fp12::pow_cyclotomic(const Limbs<M>& e, size_t) const {
  auto naf = naf_digits(e);
  Fp12 inv = conj();
  Fp12 acc = one();
  for (size_t i = naf.size(); i-- > 0;) {
    acc = acc.cyclotomic_square();
    if (naf[i] == 1)
      acc = acc * *this;
    else if (naf[i] == -1)
      acc = acc * inv;
  }
  return acc;
}

// traits adapter so shamir.hpp works over the scalar field
struct FrField {
  using Elem = Fr;
  static constexpr size_t kOrder = SIZE_MAX;  // effectively unbounded for our n
  static Elem zero() { return Fr::zero(); }
  static Elem one() { return Fr::one(); }
  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem sub(const Elem& a, const Elem& b) { return a - b; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem inv(const Elem& a) { return a.inverse(); }
  static Elem neg(const Elem& a) { return -a; }
  static bool is_zero(const Elem& a) { return a.is_zero(); }
  static bool eq(const Elem& a, const Elem& b) { return a == b; }
  static Elem from_index(size_t j) {
    if (j == 0) throw ParamError("fr index must be nonzero");
    return Fr::from_u64(j);
  }
  static Elem random(Rng& rng) { return Fr::random(rng); }
};

}  // namespace trustsas::crypto
