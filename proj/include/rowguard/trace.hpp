#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <string>

namespace rowguard {

// One main-memory request: `tick_delta` memory-controller cycles after the
// previous request, read or write, physical byte address.
struct MemRequest {
  std::int64_t tick_delta = 0;
  bool is_write = false;
  std::uint64_t addr = 0;

  bool operator==(const MemRequest&) const = default;
};

struct TraceHeader {
  int format_version = 1;
  std::uint64_t capacity = 0;  // 0: unstated
  std::string comment;
};

// Streaming request source; file readers and synthetic generators implement it.
class TraceSource {
 public:
  virtual ~TraceSource() = default;
  virtual bool next(MemRequest& out) = 0;
  virtual void rewind() = 0;
};

// Line format: `<tick_delta> <R|W> 0x<hex addr>`. Comments start with '#';
// a leading `# rowguard-trace v<N>` / `# capacity <bytes>` block is the
// header. The file is streamed, never fully buffered.
class FileTraceSource final : public TraceSource {
 public:
  explicit FileTraceSource(const std::string& path);
  bool next(MemRequest& out) override;
  void rewind() override;
  const TraceHeader& header() const { return header_; }

 private:
  void parse_header();
  std::string path_;
  std::ifstream in_;
  TraceHeader header_;
  long line_number_ = 0;
};

class VectorTraceSource final : public TraceSource {
 public:
  explicit VectorTraceSource(std::vector<MemRequest> reqs) : reqs_(std::move(reqs)) {}
  bool next(MemRequest& out) override {
    if (pos_ >= reqs_.size()) return false;
    out = reqs_[pos_++];
    return true;
  }
  void rewind() override { pos_ = 0; }
  const std::vector<MemRequest>& requests() const { return reqs_; }

 private:
  std::vector<MemRequest> reqs_;
  std::size_t pos_ = 0;
};

MemRequest parse_trace_line(const std::string& line, long line_number);

void write_trace(const std::string& path, TraceSource& source, const TraceHeader& header);

}  // namespace rowguard
