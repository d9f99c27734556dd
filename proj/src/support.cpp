#include "trustsas/support.hpp"

namespace trustsas {

static const char* kHexDigits = "0123456789abcdef";

std::string to_hex(const uint8_t* data, size_t n) {
  std::string s;
  s.reserve(2 * n);
  for (size_t i = 0; i < n; ++i) {
    s.push_back(kHexDigits[data[i] >> 4]);
    s.push_back(kHexDigits[data[i] & 0xf]);
  }
  return s;
}

std::string to_hex(const Bytes& b) { return to_hex(b.data(), b.size()); }

static int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw DecodeError("bad hex digit");
}

Bytes from_hex(const std::string& s) {
  if (s.size() % 2 != 0) throw DecodeError("odd hex length");
  Bytes out(s.size() / 2);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<uint8_t>((hex_val(s[2 * i]) << 4) | hex_val(s[2 * i + 1]));
  return out;
}

}  // namespace trustsas
