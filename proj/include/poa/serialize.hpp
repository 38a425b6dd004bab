#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poa/errors.hpp"

namespace poa {

/// Append-only big-endian byte buffer.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 3; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 7; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  void tag(std::string_view magic) { buf_.insert(buf_.end(), magic.begin(), magic.end()); }

  /// Reserves n zero bytes and returns a view for the caller to fill.
  std::span<std::uint8_t> extend(std::size_t n) {
    buf_.resize(buf_.size() + n);
    return std::span(buf_).subspan(buf_.size() - n);
  }

  template <class F>
  void field(const F& v) {
    v.write_bytes(extend(F::kBytes));
  }

  const std::vector<std::uint8_t>& data() const { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

/// Bounds-checked reader; every failure throws ParseError with the offset.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (auto b : take(4)) v = (v << 8) | b;
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (auto b : take(8)) v = (v << 8) | b;
    return v;
  }
  std::span<const std::uint8_t> bytes(std::size_t n) { return take(n); }

  void expect_tag(std::string_view magic) {
    const std::size_t at = pos_;
    auto got = take(magic.size());
    if (!std::equal(got.begin(), got.end(), magic.begin())) {
      throw ParseError("bad magic, expected '" + std::string(magic) + "'", at);
    }
  }

  /// Reads a count and rejects values that cannot fit in the remaining input.
  std::uint64_t count(std::size_t min_item_bytes) {
    const std::size_t at = pos_;
    const std::uint64_t n = u64();
    if (min_item_bytes != 0 && n > remaining() / min_item_bytes) throw ParseError("count exceeds input size", at);
    return n;
  }

  template <class F>
  F field() {
    const std::size_t at = pos_;
    auto v = F::from_bytes(take(F::kBytes));
    if (!v) throw ParseError("field element not below modulus", at);
    return *v;
  }

  void expect_end() const {
    if (!done()) throw ParseError("trailing bytes", pos_);
  }

  [[noreturn]] void fail(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

 private:
  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > remaining()) throw ParseError("unexpected end of input", data_.size());
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::string& path);
/// Writes atomically (temp file + rename). Throws FileExists unless overwrite is set.
void write_file(const std::string& path, std::span<const std::uint8_t> data, bool overwrite);
void write_text_file(const std::string& path, std::string_view text, bool overwrite);

std::string base64_encode(std::span<const std::uint8_t> data);
std::optional<std::vector<std::uint8_t>> base64_decode(std::string_view text);

}  // namespace poa
