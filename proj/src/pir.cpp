#include "trustsas/pir/pir.hpp"

#include <algorithm>

#include "trustsas/crypto/shamir.hpp"

namespace trustsas::pir {

using crypto::Gf256Field;
using namespace crypto::gf256;

QueryBatch build_query_batch(const std::vector<uint32_t>& indices, uint32_t r,
                             uint32_t num_servers, uint32_t privacy_t, Rng& rng) {
  if (num_servers < 2) throw ParamError("pir: need at least 2 servers");
  if (num_servers < privacy_t + 1) throw ParamError("pir: need servers >= t+1");
  if (num_servers >= 256) throw ParamError("pir: too many servers for GF(256)");
  for (uint32_t idx : indices)
    if (idx >= r) throw ParamError("pir: index out of range");

  QueryBatch batch;
  batch.q = static_cast<uint32_t>(indices.size());
  batch.r = r;
  batch.privacy_t = privacy_t;
  batch.payloads.resize(num_servers);
  for (uint32_t j = 0; j < num_servers; ++j) {
    auto& p = batch.payloads[j];
    p.server_point = static_cast<uint8_t>(j + 1);
    p.q = batch.q;
    p.r = r;
    p.matrix.assign(size_t(batch.q) * r, 0);
  }

  // column-wise degree-t sharing of e_i; Horner evaluation per server
  std::vector<uint8_t> coeffs(privacy_t + 1);
  for (uint32_t k = 0; k < batch.q; ++k) {
    for (uint32_t c = 0; c < r; ++c) {
      coeffs[0] = (c == indices[k]) ? 1 : 0;
      for (uint32_t d = 1; d <= privacy_t; ++d) coeffs[d] = rng.next_byte();
      for (uint32_t j = 0; j < num_servers; ++j) {
        uint8_t x = static_cast<uint8_t>(j + 1);
        uint8_t acc = coeffs[privacy_t];
        for (uint32_t d = privacy_t; d-- > 0;) acc = add(mul(acc, x), coeffs[d]);
        batch.payloads[j].matrix[size_t(k) * r + c] = acc;
      }
    }
  }
  return batch;
}

Response server_process(const ServerPayload& payload, const uint8_t* db, uint32_t r,
                        uint32_t s) {
  if (payload.r != r || payload.matrix.size() != size_t(payload.q) * r)
    throw DimensionError("pir: payload dimensions do not match database");
  Response resp;
  resp.server_point = payload.server_point;
  resp.q = payload.q;
  resp.s = s;
  resp.matrix.assign(size_t(payload.q) * s, 0);

  // stream D row by row; all q accumulator rows stay hot
  for (uint32_t c = 0; c < r; ++c) {
    const uint8_t* db_row = db + size_t(c) * s;
    for (uint32_t k = 0; k < payload.q; ++k) {
      uint8_t coeff = payload.matrix[size_t(k) * r + c];
      if (coeff == 0) continue;
      uint8_t* out = resp.matrix.data() + size_t(k) * s;
      for (uint32_t m = 0; m < s; ++m) out[m] ^= mul(coeff, db_row[m]);
    }
  }
  return resp;
}

std::vector<Bytes> reconstruct_records(uint32_t privacy_t,
                                       const std::vector<Response>& responses) {
  if (responses.size() < size_t(privacy_t) + 1)
    throw InsufficientShares("pir: fewer than t+1 responses");
  uint32_t q = responses[0].q, s = responses[0].s;
  std::vector<uint8_t> points;
  for (const auto& r : responses) {
    if (r.q != q || r.s != s || r.matrix.size() != size_t(q) * s)
      throw DimensionError("pir: inconsistent response dimensions");
    points.push_back(r.server_point);
  }
  auto lambda = crypto::lagrange_coeffs<Gf256Field>(points, 0);

  std::vector<Bytes> records(q, Bytes(s, 0));
  for (size_t j = 0; j < responses.size(); ++j) {
    uint8_t lj = lambda[j];
    if (lj == 0) continue;
    const auto& m = responses[j].matrix;
    for (uint32_t k = 0; k < q; ++k) {
      uint8_t* out = records[k].data();
      const uint8_t* row = m.data() + size_t(k) * s;
      for (uint32_t c = 0; c < s; ++c) out[c] ^= mul(lj, row[c]);
    }
  }
  return records;
}

std::optional<std::vector<Bytes>> reconstruct_with_exclusion(
    uint32_t privacy_t, const std::vector<Response>& responses,
    const std::function<bool(const Bytes&)>& record_ok) {
  size_t need = size_t(privacy_t) + 1;
  if (responses.size() < need) return std::nullopt;
  std::vector<bool> sel(responses.size(), false);
  std::fill(sel.begin(), sel.begin() + need, true);
  do {
    std::vector<Response> sub;
    for (size_t i = 0; i < responses.size(); ++i)
      if (sel[i]) sub.push_back(responses[i]);
    auto records = reconstruct_records(privacy_t, sub);
    bool ok = true;
    for (const auto& rec : records)
      if (!record_ok(rec)) {
        ok = false;
        break;
      }
    if (ok) return records;
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return std::nullopt;
}

Bytes encode_query(const ServerPayload& p, uint32_t s_hint) {
  Bytes out;
  out.reserve(kWireHeaderBytes + p.matrix.size());
  out.push_back(0x01);
  put_u16(out, static_cast<uint16_t>(p.q));
  put_u32(out, p.r);
  put_u32(out, s_hint);
  out.insert(out.end(), p.matrix.begin(), p.matrix.end());
  return out;
}

ServerPayload decode_query(const Bytes& b, uint8_t server_point) {
  ByteReader r(b);
  if (r.u8() != 0x01) throw DecodeError("pir query: bad version");
  ServerPayload p;
  p.server_point = server_point;
  p.q = r.u16();
  p.r = r.u32();
  r.u32();  // s hint, unused by the server
  if (r.remaining() != size_t(p.q) * p.r)
    throw DecodeError("pir query: bad payload size");
  p.matrix = r.raw(r.remaining());
  return p;
}

Bytes encode_response(const Response& resp, uint32_t r_hint) {
  Bytes out;
  out.reserve(kWireHeaderBytes + resp.matrix.size());
  out.push_back(0x01);
  put_u16(out, static_cast<uint16_t>(resp.q));
  put_u32(out, r_hint);
  put_u32(out, resp.s);
  out.insert(out.end(), resp.matrix.begin(), resp.matrix.end());
  return out;
}

Response decode_response(const Bytes& b, uint8_t server_point) {
  ByteReader r(b);
  if (r.u8() != 0x01) throw DecodeError("pir response: bad version");
  Response resp;
  resp.server_point = server_point;
  resp.q = r.u16();
  r.u32();  // r hint
  resp.s = r.u32();
  if (r.remaining() != size_t(resp.q) * resp.s)
    throw DecodeError("pir response: bad payload size");
  resp.matrix = r.raw(r.remaining());
  return resp;
}

ServerWork server_work_model(uint64_t q, uint64_t r, uint64_t s) {
  return {q * r * s, r * s};
}

}  // namespace trustsas::pir
