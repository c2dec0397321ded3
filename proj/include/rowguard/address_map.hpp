#pragma once

#include <cstdint>
#include <string>

#include "rowguard/geometry.hpp"

namespace rowguard {

// MOP-style interleaving: groups of k consecutive cachelines share a
// (bank, row); adjacent groups cycle through banks. Bit layout, low to high:
//   cacheline offset (6) | k-group column | bank | bankgroup | rank | channel
//   | remaining column | row
enum class MappingKind { MOP_1CL, MOP_2CL, MOP_4CL, MOP_8CL, MOP_64CL };

MappingKind mapping_from_string(const std::string& name);
std::string to_string(MappingKind kind);
int mop_group_cachelines(MappingKind kind);

struct Coordinates {
  int channel = 0;
  int rank = 0;
  int bankgroup = 0;
  int bank = 0;
  int row = 0;
  int column = 0;  // cacheline index within the row

  bool operator==(const Coordinates&) const = default;
};

class MappingScheme {
 public:
  MappingScheme(MappingKind kind, const DeviceGeometry& geometry);

  Coordinates decode(std::uint64_t phys_addr) const;
  std::uint64_t encode(const Coordinates& coords) const;

  MappingKind kind() const { return kind_; }
  const DeviceGeometry& geometry() const { return geometry_; }
  std::uint64_t capacity_bytes() const { return geometry_.capacity_bytes(); }

  int flat_bank(const Coordinates& c) const {
    return rowguard::flat_bank(geometry_, {c.channel, c.rank, c.bankgroup, c.bank});
  }

 private:
  MappingKind kind_;
  DeviceGeometry geometry_;
  int group_bits_;  // log2(cachelines per group)
  int bank_bits_, bankgroup_bits_, rank_bits_, channel_bits_;
  int column_bits_, row_bits_;
};

}  // namespace rowguard
