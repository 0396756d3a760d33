#pragma once

#include <vector>

#include "fsq/oracle.hpp"
#include "fsq/protocol.hpp"

namespace fsq::fs {

// Non-interactive image of a PCIP transcript: challenges are recomputed
// from the oracle, so only (x, a_1..a_n, z) is kept.
struct FSProof {
    Bytes instance;
    std::vector<Bytes> messages;
    Bytes response;
};

// Oracle input for the i-th challenge (i is 1-based):
//   c_1 = H(frame(0, x, a_1)),  c_i = H(frame(i-1, c_{i-1}, a_i)).
// The round index is a 4-byte big-endian field; the previous challenge is
// encoded at the oracle's fixed challenge width. An optional associated-data
// field is appended to every input when non-empty.
Bytes challenge_input(const pcip::ChallengeSpace& space, size_t i, const Bytes& instance,
                      uint64_t prev_challenge, const Bytes& message, const Bytes& associated_data = {});

std::vector<uint64_t> derive_challenges(const rom::RandomOracle& oracle, const Bytes& instance,
                                        const std::vector<Bytes>& messages,
                                        const Bytes& associated_data = {});

FSProof prove(const pcip::Scheme& scheme, const Bytes& witness, const rom::RandomOracle& oracle,
              const Bytes& instance, Rng rng, const Bytes& associated_data = {});

bool verify(const pcip::Scheme& scheme, const rom::RandomOracle& oracle, const FSProof& proof,
            const Bytes& associated_data = {});

// Hash chain of section "enforced extraction order":
//   h_1 = H(frame(x_0, x_1)),  h_i = H(frame(h_{i-1}, x_i)).
std::vector<uint64_t> hash_chain(const rom::RandomOracle& oracle, const Bytes& x0,
                                 const std::vector<Bytes>& xs);

// Proof file: "FSQP" | 0x01 | framed(x, count, a_1..a_n, z).
Bytes serialize_proof(const FSProof& proof);
FSProof deserialize_proof(const Bytes& data);

}  // namespace fsq::fs
