#include "rowguard/time.hpp"

#include <cctype>
#include <cstdlib>

#include "rowguard/errors.hpp"

namespace rowguard {

Picos parse_time_ns(const std::string& text) {
  if (text.empty()) throw ParseError("empty time value");
  const char* begin = text.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin) throw ParseError("bad time value: '" + text + "'");
  std::string suffix(end);
  while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front())))
    suffix.erase(suffix.begin());
  if (suffix.empty() || suffix == "ns") return ns(value);
  if (suffix == "ps") return ps(static_cast<std::int64_t>(value));
  if (suffix == "us") return us(value);
  if (suffix == "ms") return ms(value);
  throw ParseError("unknown time suffix '" + suffix + "' in '" + text + "'");
}

}  // namespace rowguard
