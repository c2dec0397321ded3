#include "rowguard/geometry.hpp"

#include "rowguard/errors.hpp"

namespace rowguard {

void DeviceGeometry::validate() const {
  auto check = [](int v, const char* name) {
    if (v < 1 || !is_pow2(static_cast<std::uint64_t>(v)))
      throw ConfigError(std::string(name) + " must be a power of two >= 1");
  };
  check(channels, "channels");
  check(ranks_per_channel, "ranks_per_channel");
  check(bankgroups_per_rank, "bankgroups_per_rank");
  check(banks_per_bankgroup, "banks_per_bankgroup");
  check(rows_per_bank, "rows_per_bank");
  check(columns_per_row, "columns_per_row");
}

}  // namespace rowguard
