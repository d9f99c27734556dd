#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "trustsas/crypto/gf256.hpp"
#include "trustsas/support.hpp"

namespace trustsas::pir {

// t-private multi-server PIR over GF(2^8). Each batched index i becomes a
// column-wise Shamir sharing of the standard basis vector e_i; server j
// holds the evaluations at point j and answers with payload * D.

struct ServerPayload {
  uint8_t server_point = 0;  // GF(256) evaluation point, 1-based server index
  uint32_t q = 0, r = 0;
  std::vector<uint8_t> matrix;  // q x r, row-major
};

struct QueryBatch {
  uint32_t q = 0, r = 0;
  uint32_t privacy_t = 0;
  std::vector<ServerPayload> payloads;  // one per server
};

struct Response {
  uint8_t server_point = 0;
  uint32_t q = 0, s = 0;
  std::vector<uint8_t> matrix;  // q x s, row-major
};

QueryBatch build_query_batch(const std::vector<uint32_t>& indices, uint32_t r,
                             uint32_t num_servers, uint32_t privacy_t, Rng& rng);

// blocked matrix product over GF(2^8): D is streamed once per batch
Response server_process(const ServerPayload& payload, const uint8_t* db, uint32_t r,
                        uint32_t s);

// per-cell Lagrange interpolation at 0; responses must come from >= t+1
// distinct server points
std::vector<Bytes> reconstruct_records(uint32_t privacy_t,
                                       const std::vector<Response>& responses);

// drops response subsets until every reconstructed record satisfies
// record_ok (DB record signatures); empty if no (t+1)-subset works
std::optional<std::vector<Bytes>> reconstruct_with_exclusion(
    uint32_t privacy_t, const std::vector<Response>& responses,
    const std::function<bool(const Bytes&)>& record_ok);

// wire format: {version u8, q u16, r u32, s u32, payload row-major}
constexpr size_t kWireHeaderBytes = 11;
Bytes encode_query(const ServerPayload& p, uint32_t s_hint);
ServerPayload decode_query(const Bytes& b, uint8_t server_point);
Bytes encode_response(const Response& resp, uint32_t r_hint);
Response decode_response(const Bytes& b, uint8_t server_point);

// deterministic server work accounting; the bytes_loaded term is charged
// once per batch because the blocked product streams D a single time
struct ServerWork {
  uint64_t field_mults = 0;
  uint64_t bytes_loaded = 0;
};
ServerWork server_work_model(uint64_t q, uint64_t r, uint64_t s);

}  // namespace trustsas::pir
