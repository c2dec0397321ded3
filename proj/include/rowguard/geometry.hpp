#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace rowguard {

struct DeviceGeometry {
  int channels = 1;
  int ranks_per_channel = 2;
  int bankgroups_per_rank = 4;
  int banks_per_bankgroup = 4;
  int rows_per_bank = 128 * 1024;
  int columns_per_row = 128;  // cachelines per row (64 B each, 8 KiB rows)

  int banks_per_rank() const { return bankgroups_per_rank * banks_per_bankgroup; }
  int banks_per_channel() const { return ranks_per_channel * banks_per_rank(); }
  int total_banks() const { return channels * banks_per_channel(); }
  int total_ranks() const { return channels * ranks_per_channel; }

  std::uint64_t capacity_bytes() const {
    return static_cast<std::uint64_t>(total_banks()) * rows_per_bank * columns_per_row * 64;
  }

  void validate() const;
};

inline bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }
inline int log2i(std::uint64_t v) { return std::bit_width(v) - 1; }

// Flat bank index within the machine: channel-major, then rank, bankgroup, bank.
struct BankId {
  int channel = 0;
  int rank = 0;
  int bankgroup = 0;
  int bank = 0;
};

inline int flat_bank(const DeviceGeometry& g, const BankId& b) {
  return ((b.channel * g.ranks_per_channel + b.rank) * g.bankgroups_per_rank + b.bankgroup) *
             g.banks_per_bankgroup +
         b.bank;
}

inline BankId unflatten_bank(const DeviceGeometry& g, int flat) {
  BankId b;
  b.bank = flat % g.banks_per_bankgroup;
  flat /= g.banks_per_bankgroup;
  b.bankgroup = flat % g.bankgroups_per_rank;
  flat /= g.bankgroups_per_rank;
  b.rank = flat % g.ranks_per_channel;
  b.channel = flat / g.ranks_per_channel;
  return b;
}

inline int rank_of_flat_bank(const DeviceGeometry& g, int flat) {
  return flat / g.banks_per_rank();  // global rank index (channel-major)
}

}  // namespace rowguard
