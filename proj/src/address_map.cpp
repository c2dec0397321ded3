#include "rowguard/address_map.hpp"

#include "rowguard/errors.hpp"

namespace rowguard {

MappingKind mapping_from_string(const std::string& name) {
  if (name == "mop1") return MappingKind::MOP_1CL;
  if (name == "mop2") return MappingKind::MOP_2CL;
  if (name == "mop4") return MappingKind::MOP_4CL;
  if (name == "mop8") return MappingKind::MOP_8CL;
  if (name == "mop64") return MappingKind::MOP_64CL;
  throw ConfigError("unknown mapping '" + name + "' (expected mop1|mop2|mop4|mop8|mop64)");
}

std::string to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::MOP_1CL: return "mop1";
    case MappingKind::MOP_2CL: return "mop2";
    case MappingKind::MOP_4CL: return "mop4";
    case MappingKind::MOP_8CL: return "mop8";
    case MappingKind::MOP_64CL: return "mop64";
  }
  return "?";
}

int mop_group_cachelines(MappingKind kind) {
  switch (kind) {
    case MappingKind::MOP_1CL: return 1;
    case MappingKind::MOP_2CL: return 2;
    case MappingKind::MOP_4CL: return 4;
    case MappingKind::MOP_8CL: return 8;
    case MappingKind::MOP_64CL: return 64;
  }
  return 1;
}

MappingScheme::MappingScheme(MappingKind kind, const DeviceGeometry& geometry)
    : kind_(kind), geometry_(geometry) {
  geometry_.validate();
  group_bits_ = log2i(static_cast<std::uint64_t>(mop_group_cachelines(kind)));
  bank_bits_ = log2i(geometry_.banks_per_bankgroup);
  bankgroup_bits_ = log2i(geometry_.bankgroups_per_rank);
  rank_bits_ = log2i(geometry_.ranks_per_channel);
  channel_bits_ = log2i(geometry_.channels);
  column_bits_ = log2i(geometry_.columns_per_row);
  row_bits_ = log2i(geometry_.rows_per_bank);
  if (group_bits_ > column_bits_)
    throw ConfigError("mapping group larger than a row (" + to_string(kind) + ")");
}

Coordinates MappingScheme::decode(std::uint64_t phys_addr) const {
  if (phys_addr >= capacity_bytes())
    throw StructuralError("address 0x" + std::to_string(phys_addr) + " beyond capacity");
  std::uint64_t a = phys_addr >> 6;  // cacheline index
  auto take = [&a](int bits) {
    std::uint64_t v = a & ((std::uint64_t{1} << bits) - 1);
    a >>= bits;
    return static_cast<int>(v);
  };
  Coordinates c;
  int col_lo = take(group_bits_);
  c.bank = take(bank_bits_);
  c.bankgroup = take(bankgroup_bits_);
  c.rank = take(rank_bits_);
  c.channel = take(channel_bits_);
  int col_hi = take(column_bits_ - group_bits_);
  c.row = take(row_bits_);
  c.column = (col_hi << group_bits_) | col_lo;
  return c;
}

std::uint64_t MappingScheme::encode(const Coordinates& c) const {
  if (c.channel < 0 || c.channel >= geometry_.channels || c.rank < 0 ||
      c.rank >= geometry_.ranks_per_channel || c.bankgroup < 0 ||
      c.bankgroup >= geometry_.bankgroups_per_rank || c.bank < 0 ||
      c.bank >= geometry_.banks_per_bankgroup || c.row < 0 || c.row >= geometry_.rows_per_bank ||
      c.column < 0 || c.column >= geometry_.columns_per_row)
    throw StructuralError("coordinates out of range");
  std::uint64_t a = 0;
  int shift = 0;
  auto put = [&a, &shift](std::uint64_t v, int bits) {
    a |= v << shift;
    shift += bits;
  };
  put(static_cast<std::uint64_t>(c.column) & ((std::uint64_t{1} << group_bits_) - 1), group_bits_);
  put(static_cast<std::uint64_t>(c.bank), bank_bits_);
  put(static_cast<std::uint64_t>(c.bankgroup), bankgroup_bits_);
  put(static_cast<std::uint64_t>(c.rank), rank_bits_);
  put(static_cast<std::uint64_t>(c.channel), channel_bits_);
  put(static_cast<std::uint64_t>(c.column) >> group_bits_, column_bits_ - group_bits_);
  put(static_cast<std::uint64_t>(c.row), row_bits_);
  return a << 6;
}

}  // namespace rowguard
