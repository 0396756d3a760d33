#pragma once

#include <optional>

#include "fsq/fs.hpp"

namespace fsq::sig {

struct KeyPair {
    Bytes secret_key;  // witness
    Bytes public_key;  // instance
};

struct Signature {
    std::vector<Bytes> messages;
    Bytes response;
};

KeyPair keygen(const pcip::Scheme& scheme, uint64_t seed);

// Binds (pk, m) into the first hash only: the instance handed to the
// challenge chain is the injective pairing frame(pk, m), so signing is the
// Fiat-Shamir prover run on the augmented scheme at x = pk || m.
Bytes bind_instance(const Bytes& public_key, const Bytes& message);

Signature sign(const pcip::Scheme& scheme, const Bytes& secret_key, const Bytes& public_key,
               const Bytes& message, const rom::RandomOracle& oracle, uint64_t seed,
               const Bytes& associated_data = {});

bool verify(const pcip::Scheme& scheme, const Bytes& public_key, const Bytes& message,
            const Signature& signature, const rom::RandomOracle& oracle,
            const Bytes& associated_data = {});

// Same bytes as sign(), produced through the generic FS prover over the
// augmented scheme. Operationalizes the equivalence of the two formulations.
Signature sign_via_fs_equivalence(const pcip::Scheme& scheme, const Bytes& secret_key,
                                  const Bytes& public_key, const Bytes& message,
                                  const rom::RandomOracle& oracle, uint64_t seed,
                                  const Bytes& associated_data = {});

// Computationally-unique-responses checker: scans accepting transcripts for
// a pair that shares (x, a_1, c_1, ..., a_i, c_i) but differs first at a
// message position (z counts as a_{n+1}). Returns the offending pair and
// position if found.
struct UniquenessViolation {
    size_t first = 0, second = 0;  // transcript indices
    size_t position = 0;           // 1-based index of the differing message
};
std::optional<UniquenessViolation> find_uniqueness_violation(
    const pcip::Scheme& scheme, const std::vector<pcip::Transcript>& accepting);

// Signature file: "FSQS" | 0x01 | framed(scheme id, count, a_1..a_n, z).
Bytes serialize_signature(const std::string& scheme_id, const Signature& sig);
std::pair<std::string, Signature> deserialize_signature(const Bytes& data);

}  // namespace fsq::sig
