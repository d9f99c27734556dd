#include "trustsas/ledger/contract.hpp"

#include <algorithm>
#include <map>

namespace trustsas::ledger {

std::vector<Assignment> execute_contract(std::vector<MemberLocation> members,
                                         const std::vector<ChannelAvailability>& avail) {
  std::sort(members.begin(), members.end(),
            [](const MemberLocation& a, const MemberLocation& b) {
              if (a.pseudonym != b.pseudonym) return a.pseudonym < b.pseudonym;
              return a.cell < b.cell;
            });

  // remaining capacity per (cell, channel), channels visited in id order
  std::map<std::pair<uint32_t, uint32_t>, std::pair<uint32_t, int32_t>> capacity;
  for (const auto& ch : avail) {
    uint32_t used = std::min(ch.current_users, ch.max_concurrent_sus);
    uint32_t room = ch.max_concurrent_sus - used;
    capacity[{ch.cell, ch.channel}] = {room, ch.max_tx_power_dbm};
  }

  std::vector<Assignment> out;
  for (const auto& m : members) {
    for (auto& [key, slot] : capacity) {
      if (key.first != m.cell) continue;
      if (slot.first == 0) continue;
      slot.first -= 1;
      out.push_back({m.pseudonym, key.first, key.second, slot.second});
      break;
    }
  }
  return out;
}

Bytes encode_assignments(const std::vector<Assignment>& a) {
  Bytes out;
  put_u32(out, static_cast<uint32_t>(a.size()));
  for (const auto& x : a) {
    put_bytes(out, x.pseudonym);
    put_u32(out, x.cell);
    put_u32(out, x.channel);
    put_u32(out, static_cast<uint32_t>(x.power_dbm));
  }
  return out;
}

std::vector<Assignment> decode_assignments(const Bytes& b) {
  ByteReader r(b);
  uint32_t n = r.u32();
  std::vector<Assignment> out;
  for (uint32_t i = 0; i < n; ++i) {
    Assignment a;
    a.pseudonym = r.blob();
    a.cell = r.u32();
    a.channel = r.u32();
    a.power_dbm = static_cast<int32_t>(r.u32());
    out.push_back(a);
  }
  return out;
}

}  // namespace trustsas::ledger
