#pragma once

#include <cmath>
#include <cstdint>

#include "fsq/bytes.hpp"

namespace fsq {

// One-shot SHAKE256.
Bytes shake256(const Bytes& input, size_t out_len);

// Incremental SHAKE256 output stream over a fixed input.
class XofStream {
  public:
    explicit XofStream(Bytes input) : input_(std::move(input)) {}

    uint8_t next_byte();
    Bytes next_bytes(size_t n);
    uint64_t next_u64();

    // Uniform value in [0, bound) by rejection sampling on the smallest
    // byte width covering bound-1. Exactly uniform.
    uint64_t uniform_below(uint64_t bound);

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform_double();

  private:
    void refill();

    Bytes input_;
    Bytes buf_;
    size_t pos_ = 0;
    size_t produced_ = 0;
};

// Deterministic RNG: a SHAKE256 stream keyed by a context label and a seed.
// All randomness in the project is drawn through this, so runs are
// reproducible across platforms.
class Rng {
  public:
    Rng(std::string_view context, uint64_t seed)
        : Rng(frame({to_bytes("FSQ/v1/rng"), to_bytes(context), u64_be(seed)})) {}

    uint64_t u64() { return stream_.next_u64(); }
    uint64_t below(uint64_t bound) { return stream_.uniform_below(bound); }
    double real() { return stream_.uniform_double(); }
    Bytes bytes(size_t n) { return stream_.next_bytes(n); }
    bool coin() { return (stream_.next_byte() & 1) != 0; }

    // Standard normal via Box-Muller.
    double gaussian();

    // Independent RNG derived from this one's key, for splitting seeds.
    Rng child(std::string_view label, uint64_t index = 0) const {
        return Rng(frame({key_, to_bytes(label), u64_be(index)}));
    }

  private:
    explicit Rng(Bytes key) : key_(std::move(key)), stream_(key_) {}

    Bytes key_;
    XofStream stream_;
};

// Byte width of challenge encodings for a space of the given cardinality:
// ceil(log2(cardinality) / 8), at least 1.
inline size_t challenge_width(uint64_t cardinality) {
    size_t bits = 0;
    uint64_t v = cardinality - 1;
    while (v != 0) {
        ++bits;
        v >>= 1;
    }
    if (bits == 0) bits = 1;
    return (bits + 7) / 8;
}

}  // namespace fsq
