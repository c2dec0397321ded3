#include "rowguard/mitigation.hpp"

namespace rowguard {

std::vector<int> victim_rows(int row, int blast_radius, int rows_per_bank) {
  std::vector<int> out;
  out.reserve(2 * static_cast<std::size_t>(blast_radius));
  for (int d = 1; d <= blast_radius; ++d) {
    if (row - d >= 0) out.push_back(row - d);
    if (row + d < rows_per_bank) out.push_back(row + d);
  }
  return out;
}

}  // namespace rowguard
