#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "zkset/errors.hpp"

namespace zkset {

using Bytes = std::vector<uint8_t>;
using BytesView = std::span<const uint8_t>;

inline Bytes to_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

inline void append(Bytes& out, BytesView more) { out.insert(out.end(), more.begin(), more.end()); }

inline void append_u8(Bytes& out, uint8_t v) { out.push_back(v); }

inline void append_u32_be(Bytes& out, uint32_t v) {
    for (int i = 3; i >= 0; i--) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

inline void append_u64_be(Bytes& out, uint64_t v) {
    for (int i = 7; i >= 0; i--) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

// Sequential reader over a byte buffer; throws a decode error on underrun.
class ByteReader {
  public:
    explicit ByteReader(BytesView data) : data_(data) {}

    uint8_t u8() { return take(1)[0]; }

    uint32_t u32_be() {
        auto b = take(4);
        return (uint32_t(b[0]) << 24) | (uint32_t(b[1]) << 16) | (uint32_t(b[2]) << 8) | b[3];
    }

    uint64_t u64_be() {
        auto b = take(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v = (v << 8) | b[i];
        return v;
    }

    BytesView take(size_t n) {
        if (pos_ + n > data_.size()) fail(ErrorKind::decode, "truncated input");
        BytesView out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    bool exhausted() const { return pos_ == data_.size(); }
    size_t remaining() const { return data_.size() - pos_; }

    void expect_end() const {
        if (!exhausted()) fail(ErrorKind::decode, "trailing bytes");
    }

  private:
    BytesView data_;
    size_t pos_ = 0;
};

inline std::string to_hex(BytesView data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

inline Bytes from_hex(const std::string& hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0) fail(ErrorKind::decode, "odd-length hex string");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); i++) {
        int hi = nibble(hex[2 * i]), lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) fail(ErrorKind::decode, "invalid hex digit");
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

}  // namespace zkset
