#pragma once

#include <utility>
#include <vector>

#include "trustsas/crypto/fields.hpp"
#include "trustsas/support.hpp"

namespace trustsas::crypto {

// Group-exponentiation counter. Scalar multiplications in G1/G2 and
// exponentiations in GT all count as one unit; cost-model tests read it.
namespace ops {
uint64_t& exp_counter();
inline void exp_reset() { exp_counter() = 0; }
inline uint64_t exp_count() { return exp_counter(); }
}  // namespace ops

// Jacobian point on y^2 = x^3 + b over the coordinate field of Tag.
template <typename Fx, typename Tag>
class ECPoint {
 public:
  Fx X{}, Y{}, Z{};  // infinity iff Z == 0

  static ECPoint identity() {
    ECPoint p;
    p.X = Fx::one();
    p.Y = Fx::one();
    return p;
  }
  static ECPoint from_affine(const Fx& x, const Fx& y) {
    ECPoint p;
    p.X = x;
    p.Y = y;
    p.Z = Fx::one();
    return p;
  }
  bool is_identity() const { return Z.is_zero(); }

  ECPoint dbl() const {
    if (is_identity()) return *this;
    Fx A = X.square();
    Fx B = Y.square();
    Fx C = B.square();
    Fx D = ((X + B).square() - A - C).dbl();
    Fx E = A + A + A;
    Fx F = E.square();
    ECPoint r;
    r.X = F - D.dbl();
    r.Y = E * (D - r.X) - C.dbl().dbl().dbl();
    r.Z = (Y * Z).dbl();
    return r;
  }

  ECPoint operator+(const ECPoint& o) const {
    if (is_identity()) return o;
    if (o.is_identity()) return *this;
    Fx Z1Z1 = Z.square();
    Fx Z2Z2 = o.Z.square();
    Fx U1 = X * Z2Z2;
    Fx U2 = o.X * Z1Z1;
    Fx S1 = Y * o.Z * Z2Z2;
    Fx S2 = o.Y * Z * Z1Z1;
    if (U1 == U2) {
      if (S1 == S2) return dbl();
      return identity();
    }
    Fx H = U2 - U1;
    Fx I = H.dbl().square();
    Fx J = H * I;
    Fx rr = (S2 - S1).dbl();
    Fx V = U1 * I;
    ECPoint r;
    r.X = rr.square() - J - V.dbl();
    r.Y = rr * (V - r.X) - (S1 * J).dbl();
    r.Z = ((Z + o.Z).square() - Z1Z1 - Z2Z2) * H;
    return r;
  }
  ECPoint operator-() const {
    ECPoint r = *this;
    r.Y = -r.Y;
    return r;
  }
  ECPoint operator-(const ECPoint& o) const { return *this + (-o); }

  bool operator==(const ECPoint& o) const {
    if (is_identity() || o.is_identity()) return is_identity() && o.is_identity();
    Fx Z1Z1 = Z.square();
    Fx Z2Z2 = o.Z.square();
    if (!(X * Z2Z2 == o.X * Z1Z1)) return false;
    return Y * Z2Z2 * o.Z == o.Y * Z1Z1 * Z;
  }
  bool operator!=(const ECPoint& o) const { return !(*this == o); }

  template <size_t M>
  ECPoint mul_limbs(const Limbs<M>& e, size_t ebits) const {
    ECPoint acc = identity();
    for (size_t i = ebits; i-- > 0;) {
      acc = acc.dbl();
      if (limbs_bit(e, i)) acc = acc + *this;
    }
    return acc;
  }

  ECPoint operator*(const Fr& k) const {
    ++ops::exp_counter();
    return mul_limbs(k.canonical(), 255);
  }

  std::pair<Fx, Fx> to_affine() const {
    if (is_identity()) throw ParamError("affine of identity");
    Fx zi = Z.inverse();
    Fx zi2 = zi.square();
    return {X * zi2, Y * zi2 * zi};
  }
};

struct G1Tag;
struct G2Tag;
using G1 = ECPoint<Fp, G1Tag>;
using G2 = ECPoint<Fp2, G2Tag>;

const G1& g1_generator();
const G2& g2_generator();

// order-r subgroup membership (identity counts as member)
bool g1_in_subgroup(const G1& p);
bool g2_in_subgroup(const G2& p);

bool g1_on_curve_affine(const Fp& x, const Fp& y);
bool g2_on_curve_affine(const Fp2& x, const Fp2& y);

// compressed encodings: 48 bytes for G1, 96 for G2
Bytes g1_serialize(const G1& p);
Bytes g2_serialize(const G2& p);
// throws DecodeError for malformed/off-curve/out-of-subgroup input
G1 g1_deserialize(const uint8_t* b, size_t n);
G2 g2_deserialize(const uint8_t* b, size_t n);

// deterministic hash to the r-torsion of G1 (try-and-increment,
// cofactor cleared); no group exponentiations are counted
G1 hash_to_g1(const Bytes& msg, const std::string& domain);

// scalar derived from arbitrary bytes (Fiat-Shamir)
Fr hash_to_fr(const Bytes& msg, const std::string& domain);

// target group element (image of the final exponentiation)
struct Gt {
  Fp12 v = Fp12::one();

  static Gt one() { return {}; }
  bool operator==(const Gt& o) const { return v == o.v; }
  bool operator!=(const Gt& o) const { return !(v == o.v); }
  Gt operator*(const Gt& o) const { return {v * o.v}; }
  Gt inverse() const { return {v.conj()}; }  // unitary in the cyclotomic subgroup
  Gt pow(const Fr& k) const {
    ++ops::exp_counter();
    return {v.pow_cyclotomic(k.canonical(), 255)};
  }
  Bytes serialize() const;
  static Gt deserialize(const uint8_t* b, size_t n);
};

Fp12 miller_loop(const G1& p, const G2& q);
Fp12 final_exponentiation(const Fp12& f);

Gt pairing(const G1& p, const G2& q);
// true iff prod_i e(p_i, q_i) == 1
bool pairing_product_is_one(const std::vector<std::pair<G1, G2>>& pairs);
// prod_i e(p_i, q_i) as a Gt value (single shared final exponentiation)
Gt pairing_product(const std::vector<std::pair<G1, G2>>& pairs);

}  // namespace trustsas::crypto
