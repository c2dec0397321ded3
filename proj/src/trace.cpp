#include "rowguard/trace.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include "rowguard/errors.hpp"

namespace rowguard {

MemRequest parse_trace_line(const std::string& line, long line_number) {
  auto fail = [line_number](const std::string& what) {
    throw ParseError("trace line " + std::to_string(line_number) + ": " + what);
  };
  const char* p = line.c_str();
  const char* end = p + line.size();
  auto skip_ws = [&] {
    while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
  };

  MemRequest req;
  skip_ws();
  auto [p1, ec1] = std::from_chars(p, end, req.tick_delta);
  if (ec1 != std::errc{}) fail("expected tick delta");
  if (req.tick_delta < 0) fail("negative tick delta");
  p = p1;
  skip_ws();
  if (p >= end || (*p != 'R' && *p != 'W')) fail("expected R or W");
  req.is_write = (*p == 'W');
  ++p;
  skip_ws();
  if (end - p < 2 || p[0] != '0' || (p[1] != 'x' && p[1] != 'X')) fail("expected 0x address");
  p += 2;
  auto [p2, ec2] = std::from_chars(p, end, req.addr, 16);
  if (ec2 != std::errc{} || p2 == p) fail("bad hex address");
  p = p2;
  skip_ws();
  if (p != end) fail("trailing characters");
  return req;
}

FileTraceSource::FileTraceSource(const std::string& path) : path_(path), in_(path) {
  if (!in_) throw ParseError("cannot open trace file '" + path + "'");
  parse_header();
}

void FileTraceSource::parse_header() {
  // header lines are ordinary comments; only the leading block is inspected
  std::streampos pos = in_.tellg();
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (line.empty()) {
      pos = in_.tellg();
      continue;
    }
    if (line[0] != '#') {
      in_.seekg(pos);
      --line_number_;
      break;
    }
    if (line.rfind("# rowguard-trace v", 0) == 0) {
      header_.format_version = std::atoi(line.c_str() + 18);
      if (header_.format_version != 1)
        throw ParseError("unsupported trace format version " +
                         std::to_string(header_.format_version));
    } else if (line.rfind("# capacity ", 0) == 0) {
      header_.capacity = std::strtoull(line.c_str() + 11, nullptr, 0);
    } else {
      header_.comment += line.substr(1);
    }
    pos = in_.tellg();
  }
}

bool FileTraceSource::next(MemRequest& out) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') continue;
    out = parse_trace_line(line, line_number_);
    return true;
  }
  return false;
}

void FileTraceSource::rewind() {
  in_.clear();
  in_.seekg(0);
  line_number_ = 0;
  header_ = TraceHeader{};
  parse_header();
}

void write_trace(const std::string& path, TraceSource& source, const TraceHeader& header) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << "# rowguard-trace v" << header.format_version << "\n";
  if (header.capacity) out << "# capacity " << header.capacity << "\n";
  if (!header.comment.empty()) out << "#" << header.comment << "\n";
  MemRequest req;
  char buf[64];
  while (source.next(req)) {
    std::snprintf(buf, sizeof(buf), "%lld %c 0x%llx\n", static_cast<long long>(req.tick_delta),
                  req.is_write ? 'W' : 'R', static_cast<unsigned long long>(req.addr));
    out << buf;
  }
  if (!out) throw ParseError("write failed for '" + path + "'");
}

}  // namespace rowguard
