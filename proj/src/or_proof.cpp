#include "fsq/or_proof.hpp"

#include <stdexcept>
#include <tuple>

namespace fsq::orp {

Bytes or_challenge_input(int tag, const Bytes& x0, const Bytes& x1, const Bytes& a) {
    return frame({Bytes{static_cast<uint8_t>(tag)}, x0, x1, a});
}

OrProof or_prove(const pcip::Scheme& sigma0, const pcip::Scheme& sigma1, const Bytes& x0,
                 const Bytes& x1, int known_branch, const Bytes& witness,
                 const rom::RandomOracle& oracle, uint64_t seed) {
    if (sigma0.rounds() != 1 || sigma1.rounds() != 1)
        throw std::invalid_argument("or_prove: both schemes must be Sigma-protocols");
    if (known_branch != 0 && known_branch != 1) throw std::invalid_argument("or_prove: branch must be 0 or 1");

    const pcip::Scheme& known = known_branch == 0 ? sigma0 : sigma1;
    const pcip::Scheme& other = known_branch == 0 ? sigma1 : sigma0;
    const Bytes& x_known = known_branch == 0 ? x0 : x1;
    const Bytes& x_other = known_branch == 0 ? x1 : x0;

    Rng rng("fsq-or-prove", seed);
    auto session = known.prover(witness, x_known, rng.child("prover"));
    Bytes a_known = session->first_message();

    // The known branch's first message fixes the other branch's challenge.
    uint64_t c_other = oracle.query(or_challenge_input(known_branch, x0, x1, a_known));

    Rng zrng = rng.child("response");
    Bytes z_other = other.sample_response(x_other, zrng);
    auto a_other = other.simulate_first_message(x_other, c_other, z_other);
    if (!a_other)
        throw std::invalid_argument("or_prove: simulated branch lacks a special HVZK simulator");

    uint64_t c_known = oracle.query(or_challenge_input(1 - known_branch, x0, x1, *a_other));
    Bytes z_known = session->next_message(c_known);

    OrProof proof;
    if (known_branch == 0) {
        proof = OrProof{a_known, *a_other, z_known, z_other};
    } else {
        proof = OrProof{*a_other, a_known, z_other, z_known};
    }
    return proof;
}

bool or_verify(const pcip::Scheme& sigma0, const pcip::Scheme& sigma1, const Bytes& x0,
               const Bytes& x1, const OrProof& proof, const rom::RandomOracle& oracle) {
    if (sigma0.rounds() != 1 || sigma1.rounds() != 1)
        throw std::invalid_argument("or_verify: both schemes must be Sigma-protocols");
    uint64_t c0 = oracle.query(or_challenge_input(1, x0, x1, proof.a1));
    uint64_t c1 = oracle.query(or_challenge_input(0, x0, x1, proof.a0));
    pcip::Transcript t0{x0, {proof.a0}, {c0}, proof.z0};
    pcip::Transcript t1{x1, {proof.a1}, {c1}, proof.z1};
    return sigma0.predicate(t0) && sigma1.predicate(t1);
}

Bytes serialize_or_proof(const Bytes& x0, const Bytes& x1, const OrProof& proof) {
    Bytes out = to_bytes("FSQO");
    out.push_back(0x01);
    append(out, frame({x0, x1, proof.a0, proof.a1, proof.z0, proof.z1}));
    return out;
}

std::tuple<Bytes, Bytes, OrProof> deserialize_or_proof(const Bytes& data) {
    if (data.size() < 5 || to_string(Bytes(data.begin(), data.begin() + 4)) != "FSQO" || data[4] != 0x01)
        throw std::runtime_error("or-proof file: bad magic or version");
    auto fields = unframe(Bytes(data.begin() + 5, data.end()));
    if (fields.size() != 6) throw std::runtime_error("or-proof file: field count mismatch");
    return {fields[0], fields[1], OrProof{fields[2], fields[3], fields[4], fields[5]}};
}

}  // namespace fsq::orp
