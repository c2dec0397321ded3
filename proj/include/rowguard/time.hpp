#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rowguard {

// All times are kept as integer picoseconds. Config files and the CLI accept
// nanoseconds (fractional allowed, e.g. tRRD=2.5); conversion happens once at
// the parsing boundary.
using Picos = std::int64_t;

constexpr Picos kInvalidTime = INT64_MIN;

constexpr Picos ps(std::int64_t v) { return v; }
constexpr Picos ns(double v) { return static_cast<Picos>(v * 1e3 + (v >= 0 ? 0.5 : -0.5)); }
constexpr Picos us(double v) { return ns(v * 1e3); }
constexpr Picos ms(double v) { return ns(v * 1e6); }

inline double to_ns(Picos t) { return static_cast<double>(t) / 1e3; }

// Parses "45", "2.5", "45ns", "7.9us", "64ms" (no suffix = ns) into picoseconds.
Picos parse_time_ns(const std::string& text);

}  // namespace rowguard
