#pragma once

#include <cstdint>
#include <vector>

#include "trustsas/support.hpp"

namespace trustsas::ledger {

// inputs and outputs of the fixed allocation program that every record's
// smart contract runs; execution is a pure function so every chain copy
// produces byte-identical assignments

struct MemberLocation {
  Bytes pseudonym;
  uint32_t cell = 0;
};

struct ChannelAvailability {
  uint32_t cell = 0;
  uint32_t channel = 0;
  int32_t max_tx_power_dbm = 0;
  uint32_t max_concurrent_sus = 0;
  uint32_t current_users = 0;  // usage already registered by other clusters
};

struct Assignment {
  Bytes pseudonym;
  uint32_t cell = 0;
  uint32_t channel = 0;
  int32_t power_dbm = 0;
};

// Deterministic rules: members in ascending pseudonym byte order, channels
// in ascending id order, each member gets the first channel in its cell
// with remaining capacity. Members with no capacity stay unassigned.
std::vector<Assignment> execute_contract(std::vector<MemberLocation> members,
                                         const std::vector<ChannelAvailability>& avail);

Bytes encode_assignments(const std::vector<Assignment>& a);
std::vector<Assignment> decode_assignments(const Bytes& b);

}  // namespace trustsas::ledger
