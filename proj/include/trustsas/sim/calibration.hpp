#pragma once

#include <string>

namespace trustsas::sim {

// Simulated-time costs of the cryptographic primitives, in seconds.
// Defaults reproduce the reference measurements the design is calibrated
// against; `bench` regenerates them for the host machine.
struct Calibration {
  double point_mul_s = 1.05e-3;          // per EC point multiplication; DKG = n * pm
  double tbls_share_gen_s = 0.63e-3;
  double tbls_share_verify_s = 2.3e-3;
  double tbls_reconstruct_per_share_s = 0.922e-3;
  double tbls_group_verify_s = 2.3e-3;
  double epid_sign_base_s = 0.135;
  double epid_verify_base_s = 0.120;
  double expp_s = 0.5e-3;                // per revocation-entry exponentiation
  double pir_client_unit_s = 3.967e-9;   // * q * l^2 * r
  double pir_server_mult_s = 1.826e-10;  // * q * r * s
  double pir_server_load_s = 1.826e-10;  // * r * s, once per batch
  double bft_verify_s = 2.3e-3;          // per consensus message verification
  double ed25519_s = 0.1e-3;             // record/checkpoint signature ops

  double epid_sign_s(size_t d2, size_t d3) const {
    return epid_sign_base_s + double(6 * d2 + 2 * d3) * expp_s;
  }
  double epid_verify_s(size_t d1, size_t d2, size_t d3) const {
    return epid_verify_base_s + double(d1 + 6 * d2 + 2 * d3) * expp_s;
  }
  double dkg_member_s(size_t n) const { return double(n) * point_mul_s; }
  double pir_client_s(uint64_t q, uint64_t l, uint64_t r) const {
    return double(q) * double(l) * double(l) * double(r) * pir_client_unit_s;
  }
  double pir_server_s(uint64_t q, uint64_t r, uint64_t s) const {
    return double(q) * double(r) * double(s) * pir_server_mult_s +
           double(r) * double(s) * pir_server_load_s;
  }
  double tbls_reconstruct_s(size_t shares) const {
    return double(shares) * tbls_reconstruct_per_share_s;
  }

  std::string to_json() const;
  static Calibration from_json(const std::string& text);
};

}  // namespace trustsas::sim
