#include "trustsas/sim/calibration.hpp"

#include <json.hpp>

namespace trustsas::sim {

using nlohmann::json;

std::string Calibration::to_json() const {
  json j;
  j["point_mul_s"] = point_mul_s;
  j["tbls_share_gen_s"] = tbls_share_gen_s;
  j["tbls_share_verify_s"] = tbls_share_verify_s;
  j["tbls_reconstruct_per_share_s"] = tbls_reconstruct_per_share_s;
  j["tbls_group_verify_s"] = tbls_group_verify_s;
  j["epid_sign_base_s"] = epid_sign_base_s;
  j["epid_verify_base_s"] = epid_verify_base_s;
  j["expp_s"] = expp_s;
  j["pir_client_unit_s"] = pir_client_unit_s;
  j["pir_server_mult_s"] = pir_server_mult_s;
  j["pir_server_load_s"] = pir_server_load_s;
  j["bft_verify_s"] = bft_verify_s;
  j["ed25519_s"] = ed25519_s;
  return j.dump(2);
}

Calibration Calibration::from_json(const std::string& text) {
  json j = json::parse(text);
  Calibration c;
  auto load = [&](const char* key, double& field) {
    if (j.contains(key)) field = j[key].get<double>();
  };
  load("point_mul_s", c.point_mul_s);
  load("tbls_share_gen_s", c.tbls_share_gen_s);
  load("tbls_share_verify_s", c.tbls_share_verify_s);
  load("tbls_reconstruct_per_share_s", c.tbls_reconstruct_per_share_s);
  load("tbls_group_verify_s", c.tbls_group_verify_s);
  load("epid_sign_base_s", c.epid_sign_base_s);
  load("epid_verify_base_s", c.epid_verify_base_s);
  load("expp_s", c.expp_s);
  load("pir_client_unit_s", c.pir_client_unit_s);
  load("pir_server_mult_s", c.pir_server_mult_s);
  load("pir_server_load_s", c.pir_server_load_s);
  load("bft_verify_s", c.bft_verify_s);
  load("ed25519_s", c.ed25519_s);
  return c;
}

}  // namespace trustsas::sim
