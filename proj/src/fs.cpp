#include "fsq/fs.hpp"

#include <stdexcept>

namespace fsq::fs {

Bytes challenge_input(const pcip::ChallengeSpace& space, size_t i, const Bytes& instance,
                      uint64_t prev_challenge, const Bytes& message, const Bytes& associated_data) {
    std::vector<Bytes> fields;
    fields.push_back(u32_be(static_cast<uint32_t>(i - 1)));
    if (i == 1)
        fields.push_back(instance);
    else
        fields.push_back(space.encode(prev_challenge));
    fields.push_back(message);
    if (!associated_data.empty()) fields.push_back(associated_data);
    return frame(fields);
}

std::vector<uint64_t> derive_challenges(const rom::RandomOracle& oracle, const Bytes& instance,
                                        const std::vector<Bytes>& messages,
                                        const Bytes& associated_data) {
    if (messages.empty()) throw std::invalid_argument("derive_challenges: need at least one message");
    std::vector<uint64_t> challenges;
    challenges.reserve(messages.size());
    uint64_t prev = 0;
    for (size_t i = 1; i <= messages.size(); ++i) {
        prev = oracle.query(
            challenge_input(oracle.space(), i, instance, prev, messages[i - 1], associated_data));
        challenges.push_back(prev);
    }
    return challenges;
}

FSProof prove(const pcip::Scheme& scheme, const Bytes& witness, const rom::RandomOracle& oracle,
              const Bytes& instance, Rng rng, const Bytes& associated_data) {
    if (oracle.space().cardinality != scheme.challenge_space().cardinality)
        throw std::invalid_argument("fs::prove: oracle range does not match challenge space");
    auto session = scheme.prover(witness, instance, std::move(rng));
    FSProof proof;
    proof.instance = instance;
    uint64_t prev = 0;
    for (size_t i = 1; i <= scheme.rounds(); ++i) {
        Bytes message = i == 1 ? session->first_message() : session->next_message(prev);
        prev = oracle.query(
            challenge_input(oracle.space(), i, instance, prev, message, associated_data));
        proof.messages.push_back(std::move(message));
    }
    proof.response = session->next_message(prev);
    return proof;
}

bool verify(const pcip::Scheme& scheme, const rom::RandomOracle& oracle, const FSProof& proof,
            const Bytes& associated_data) {
    if (proof.messages.size() != scheme.rounds())
        throw std::invalid_argument("fs::verify: proof shape does not match scheme");
    pcip::Transcript t;
    t.instance = proof.instance;
    t.messages = proof.messages;
    t.challenges = derive_challenges(oracle, proof.instance, proof.messages, associated_data);
    t.response = proof.response;
    return pcip::verify_transcript(scheme, t);
}

std::vector<uint64_t> hash_chain(const rom::RandomOracle& oracle, const Bytes& x0,
                                 const std::vector<Bytes>& xs) {
    if (xs.empty()) throw std::invalid_argument("hash_chain: need at least one element");
    std::vector<uint64_t> chain;
    chain.reserve(xs.size());
    uint64_t h = oracle.query(frame({x0, xs[0]}));
    chain.push_back(h);
    for (size_t i = 1; i < xs.size(); ++i) {
        h = oracle.query(frame({oracle.space().encode(h), xs[i]}));
        chain.push_back(h);
    }
    return chain;
}

Bytes serialize_proof(const FSProof& proof) {
    Bytes out = to_bytes("FSQP");
    out.push_back(0x01);
    std::vector<Bytes> fields;
    fields.push_back(proof.instance);
    fields.push_back(u32_be(static_cast<uint32_t>(proof.messages.size())));
    for (const auto& m : proof.messages) fields.push_back(m);
    fields.push_back(proof.response);
    append(out, frame(fields));
    return out;
}

FSProof deserialize_proof(const Bytes& data) {
    if (data.size() < 5 || to_string(Bytes(data.begin(), data.begin() + 4)) != "FSQP" || data[4] != 0x01)
        throw std::runtime_error("proof file: bad magic or version");
    auto fields = unframe(Bytes(data.begin() + 5, data.end()));
    if (fields.size() < 3) throw std::runtime_error("proof file: missing fields");
    FSProof proof;
    proof.instance = fields[0];
    if (fields[1].size() != 4) throw std::runtime_error("proof file: bad count field");
    uint32_t n = static_cast<uint32_t>(be_read(fields[1].data(), 4));
    if (fields.size() != 3 + n) throw std::runtime_error("proof file: field count mismatch");
    for (uint32_t i = 0; i < n; ++i) proof.messages.push_back(fields[2 + i]);
    proof.response = fields.back();
    return proof;
}

}  // namespace fsq::fs
