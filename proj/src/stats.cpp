#include "rowguard/stats.hpp"

#include <algorithm>

namespace rowguard {

LatencySummary SimStats::latency_summary() const {
  LatencySummary s;
  if (latencies.empty()) return s;
  std::vector<Picos> sorted = latencies;
  std::sort(sorted.begin(), sorted.end());
  s.count = static_cast<long>(sorted.size());
  double sum = 0;
  for (Picos v : sorted) sum += static_cast<double>(v);
  s.mean_ns = sum / static_cast<double>(sorted.size()) / 1e3;
  s.max_ns = to_ns(sorted.back());
  auto pct = [&sorted](double q) {
    const std::size_t idx =
        std::min(sorted.size() - 1, static_cast<std::size_t>(q * static_cast<double>(sorted.size())));
    return to_ns(sorted[idx]);
  };
  s.p50_ns = pct(0.50);
  s.p95_ns = pct(0.95);
  s.p99_ns = pct(0.99);
  return s;
}

}  // namespace rowguard
