#include "derand/compress.hpp"

#include <map>
#include <string>

#include "derand/error.hpp"

namespace derand {

namespace {

constexpr unsigned kMinWidth = 9;
constexpr unsigned kMaxWidth = 16;
constexpr std::uint32_t kMaxCodes = 1u << kMaxWidth;

class BitWriter {
 public:
  void put(std::uint32_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) {
      acc_ = static_cast<std::uint8_t>((acc_ << 1) | ((value >> i) & 1u));
      if (++fill_ == 8) {
        out_.push_back(acc_);
        acc_ = 0;
        fill_ = 0;
      }
    }
    bits_ += width;
  }
  std::vector<std::uint8_t> finish() {
    if (fill_) out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - fill_)));
    fill_ = 0;
    return std::move(out_);
  }
  std::uint64_t bits() const { return bits_; }

 private:
  std::vector<std::uint8_t> out_;
  std::uint8_t acc_ = 0;
  unsigned fill_ = 0;
  std::uint64_t bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}
  bool get(unsigned width, std::uint32_t& value) {
    value = 0;
    for (unsigned i = 0; i < width; ++i) {
      if (pos_ >= in_.size() * 8) return false;
      value = (value << 1) | ((in_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
      ++pos_;
    }
    return true;
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

// Width used for the code emitted when the dictionary holds `size` entries.
unsigned width_for(std::uint32_t size) {
  unsigned w = kMinWidth;
  while (w < kMaxWidth && (1u << w) < size + 1) ++w;
  return w;
}

BitWriter encode(std::span<const std::uint8_t> data) {
  BitWriter w;
  w.put(static_cast<std::uint32_t>(data.size()), 32);
  if (data.empty()) return w;
  std::map<std::pair<std::uint32_t, std::uint8_t>, std::uint32_t> dict;
  std::uint32_t next = 256;
  std::uint32_t cur = data[0];
  for (std::size_t i = 1; i < data.size(); ++i) {
    const auto key = std::pair{cur, data[i]};
    if (auto it = dict.find(key); it != dict.end()) {
      cur = it->second;
      continue;
    }
    w.put(cur, width_for(next));
    if (next < kMaxCodes) dict.emplace(key, next++);
    cur = data[i];
  }
  w.put(cur, width_for(next));
  return w;
}

}  // namespace

std::vector<std::uint8_t> lzw_compress(std::span<const std::uint8_t> data) {
  return encode(data).finish();
}

std::uint64_t compressed_size_bits(std::span<const std::uint8_t> data) {
  return encode(data).bits();
}

std::vector<std::uint8_t> lzw_decompress(std::span<const std::uint8_t> packed) {
  BitReader r(packed);
  std::uint32_t length = 0;
  if (!r.get(32, length)) throw Error("lzw: truncated header");
  std::vector<std::uint8_t> out;
  if (length == 0) return out;
  std::vector<std::string> dict(256);
  for (unsigned c = 0; c < 256; ++c) dict[c] = std::string(1, static_cast<char>(c));
  std::uint32_t code = 0;
  // The decoder's dictionary trails the encoder's by one entry.
  if (!r.get(width_for(256), code) || code >= 256) throw Error("lzw: bad first code");
  std::string prev = dict[code];
  out.insert(out.end(), prev.begin(), prev.end());
  while (out.size() < length) {
    const auto size = static_cast<std::uint32_t>(dict.size());
    if (!r.get(width_for(std::min(size + 1, kMaxCodes)), code)) throw Error("lzw: truncated stream");
    std::string entry;
    if (code < size) entry = dict[code];
    else if (code == size && size < kMaxCodes) entry = prev + prev[0];
    else throw Error("lzw: code out of range");
    out.insert(out.end(), entry.begin(), entry.end());
    if (size < kMaxCodes) dict.push_back(prev + entry[0]);
    prev = std::move(entry);
  }
  if (out.size() != length) throw Error("lzw: length mismatch");
  return out;
}

}  // namespace derand
