#include "fsq/protocol.hpp"

#include <stdexcept>

namespace fsq::pcip {

Bytes Scheme::sample_response(const Bytes&, Rng&) const {
    throw std::logic_error("scheme has no response sampler");
}

Transcript Scheme::simulator_transcript(const Bytes& instance, Rng& rng) const {
    // Default special-HVZK route: sample challenge and response, derive a.
    uint64_t c = rng.below(challenge_space().cardinality);
    Bytes z = sample_response(instance, rng);
    auto a = simulate_first_message(instance, c, z);
    if (!a) throw std::logic_error("scheme has no HVZK simulator");
    return Transcript{instance, {*a}, {c}, z};
}

bool verify_transcript(const Scheme& scheme, const Transcript& t) {
    if (t.messages.size() != scheme.rounds() || t.challenges.size() != scheme.rounds())
        throw std::invalid_argument("verify_transcript: shape does not match rounds");
    for (uint64_t c : t.challenges)
        if (c >= scheme.challenge_space().cardinality)
            throw std::invalid_argument("verify_transcript: challenge out of range");
    return scheme.predicate(t);
}

Transcript interact_with_challenges(const Scheme& scheme, const Bytes& witness,
                                    const Bytes& instance, Rng prover_rng,
                                    const std::vector<uint64_t>& challenges) {
    if (challenges.size() != scheme.rounds())
        throw std::invalid_argument("interact: wrong number of challenges");
    auto session = scheme.prover(witness, instance, std::move(prover_rng));
    Transcript t;
    t.instance = instance;
    t.challenges = challenges;
    t.messages.push_back(session->first_message());
    for (size_t i = 0; i + 1 < challenges.size(); ++i)
        t.messages.push_back(session->next_message(challenges[i]));
    t.response = session->next_message(challenges.back());
    return t;
}

Transcript interact(const Scheme& scheme, const Bytes& witness, const Bytes& instance,
                    Rng prover_rng, Rng& verifier_rng) {
    std::vector<uint64_t> challenges(scheme.rounds());
    for (auto& c : challenges) c = verifier_rng.below(scheme.challenge_space().cardinality);
    return interact_with_challenges(scheme, witness, instance, std::move(prover_rng), challenges);
}

}  // namespace fsq::pcip
