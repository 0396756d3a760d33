#pragma once

#include <array>
#include <variant>

#include "fsq/mq.hpp"
#include "fsq/protocol.hpp"

namespace fsq::q2 {

// Four transcripts of a q2 scheme (5-round, 1-bit second challenge) sharing
// the instance and first message, with the challenge pattern
//   c1: (alpha, alpha, alpha', alpha'), alpha != alpha'
//   c2: bits   (b, b', b, b'),          b != b'.
struct FourTranscripts {
    std::array<pcip::Transcript, 4> transcripts;
    std::array<bool, 4> accepted{};
};

// True iff the q2 challenge pattern holds. First challenges are compared as
// values; second challenges must agree as values within the pairs and
// differ in the significant bit across them. Throws on shape mismatch or
// when instances / first messages differ.
bool check_q2_pattern(const std::array<pcip::Transcript, 4>& ts);

// Runs a resumable deterministic prover once to the first message, then
// rewinds three times, choosing fresh challenge pairs that satisfy the q2
// pattern. Replay is bit-exact: all four runs share the prover state saved
// after the first message.
FourTranscripts rewind_collect(const pcip::Scheme& scheme, const Bytes& witness,
                               const Bytes& instance, uint64_t seed);

struct CollisionWitness {
    Bytes commitment;
    Bytes payload_a, opening_a;
    Bytes payload_b, opening_b;
};

struct ExtractFailure {
    std::string relation;  // which algebraic relation failed
};

using ExtractResult = std::variant<mq::FieldVec, CollisionWitness, ExtractFailure>;

// Key extraction from four patterned accepting transcripts of the 5-pass MQ
// scheme: recover r0 from a b=0 opening and r1 from a b=1 opening at the
// same alpha, cross-check the second alpha pair, output s = r0 + r1 with
// F(s) = v, or a commitment collision witness on inconsistent openings.
ExtractResult q2_extract_mq(const mq::Scheme& scheme, const Bytes& instance_v,
                            const FourTranscripts& ts);

}  // namespace fsq::q2
