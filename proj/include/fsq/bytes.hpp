#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fsq {

using Bytes = std::vector<uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(const Bytes& b) {
    return std::string(b.begin(), b.end());
}

inline void append(Bytes& out, const Bytes& b) {
    out.insert(out.end(), b.begin(), b.end());
}

inline Bytes u32_be(uint32_t v) {
    return Bytes{static_cast<uint8_t>(v >> 24), static_cast<uint8_t>(v >> 16),
                 static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v)};
}

inline Bytes u64_be(uint64_t v) {
    Bytes out(8);
    for (int i = 7; i >= 0; --i) {
        out[i] = static_cast<uint8_t>(v);
        v >>= 8;
    }
    return out;
}

// Big-endian encoding of v at a fixed byte width. Throws if v does not fit.
inline Bytes be_fixed(uint64_t v, size_t width) {
    if (width < 8 && (v >> (8 * width)) != 0)
        throw std::invalid_argument("be_fixed: value does not fit in width");
    Bytes out(width);
    for (size_t i = 0; i < width; ++i)
        out[width - 1 - i] = static_cast<uint8_t>(v >> (8 * i));
    return out;
}

inline uint64_t be_read(const uint8_t* p, size_t width) {
    uint64_t v = 0;
    for (size_t i = 0; i < width; ++i) v = (v << 8) | p[i];
    return v;
}

// Framing: each field is emitted as an 8-byte big-endian length followed by
// the field bytes. The concatenation parses unambiguously left to right, so
// distinct field tuples never collide.
inline Bytes frame(const std::vector<Bytes>& fields) {
    Bytes out;
    for (const auto& f : fields) {
        append(out, u64_be(f.size()));
        append(out, f);
    }
    return out;
}

inline std::vector<Bytes> unframe(const Bytes& data) {
    std::vector<Bytes> fields;
    size_t pos = 0;
    while (pos < data.size()) {
        if (data.size() - pos < 8) throw std::runtime_error("unframe: truncated length");
        uint64_t len = be_read(data.data() + pos, 8);
        pos += 8;
        if (data.size() - pos < len) throw std::runtime_error("unframe: truncated field");
        fields.emplace_back(data.begin() + pos, data.begin() + pos + len);
        pos += len;
    }
    return fields;
}

inline std::string hex_encode(const Bytes& b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * b.size());
    for (uint8_t v : b) {
        out.push_back(digits[v >> 4]);
        out.push_back(digits[v & 0xf]);
    }
    return out;
}

inline Bytes hex_decode(std::string_view s) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument("hex_decode: bad digit");
    };
    if (s.size() % 2 != 0) throw std::invalid_argument("hex_decode: odd length");
    Bytes out(s.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<uint8_t>(nibble(s[2 * i]) << 4 | nibble(s[2 * i + 1]));
    return out;
}

}  // namespace fsq
