#pragma once

#include <cstdint>
#include <stdexcept>

#include "fsq/bytes.hpp"
#include "fsq/xof.hpp"

namespace fsq::pcip {

// Finite challenge set, canonically the integers [0, cardinality).
// Values are encoded big-endian at the fixed width ceil(log2(cardinality)/8).
struct ChallengeSpace {
    uint64_t cardinality = 0;

    explicit ChallengeSpace(uint64_t card) : cardinality(card) {
        if (card < 2) throw std::invalid_argument("ChallengeSpace: cardinality must be >= 2");
    }

    size_t byte_width() const { return challenge_width(cardinality); }

    Bytes encode(uint64_t c) const {
        if (c >= cardinality) throw std::invalid_argument("ChallengeSpace: value out of range");
        return be_fixed(c, byte_width());
    }

    uint64_t decode(const Bytes& b) const {
        if (b.size() != byte_width()) throw std::invalid_argument("ChallengeSpace: bad encoding width");
        uint64_t v = be_read(b.data(), b.size());
        if (v >= cardinality) throw std::invalid_argument("ChallengeSpace: decoded value out of range");
        return v;
    }
};

}  // namespace fsq::pcip
