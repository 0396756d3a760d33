#pragma once

#include "fsq/oracle.hpp"
#include "fsq/protocol.hpp"

namespace fsq::orp {

// Sequential OR proof: challenges are computed over cross, i.e. the
// challenge for branch j hashes the other branch's first message:
//   c_0 = H(frame(1, x_0, x_1, a_1)),  c_1 = H(frame(0, x_0, x_1, a_0)).
struct OrProof {
    Bytes a0, a1;
    Bytes z0, z1;
};

OrProof or_prove(const pcip::Scheme& sigma0, const pcip::Scheme& sigma1, const Bytes& x0,
                 const Bytes& x1, int known_branch, const Bytes& witness,
                 const rom::RandomOracle& oracle, uint64_t seed);

bool or_verify(const pcip::Scheme& sigma0, const pcip::Scheme& sigma1, const Bytes& x0,
               const Bytes& x1, const OrProof& proof, const rom::RandomOracle& oracle);

// Oracle input carrying the 1-byte branch tag. Exposed for tests that count
// which messages each challenge depends on.
Bytes or_challenge_input(int tag, const Bytes& x0, const Bytes& x1, const Bytes& a);

// OR-proof file: "FSQO" | 0x01 | framed(x0, x1, a0, a1, z0, z1).
Bytes serialize_or_proof(const Bytes& x0, const Bytes& x1, const OrProof& proof);
std::tuple<Bytes, Bytes, OrProof> deserialize_or_proof(const Bytes& data);

}  // namespace fsq::orp
