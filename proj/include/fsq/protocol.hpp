#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fsq/bytes.hpp"
#include "fsq/challenge.hpp"
#include "fsq/xof.hpp"

namespace fsq::pcip {

// One full conversation of a (2n+1)-round PCIP:
// x, a_1, c_1, ..., a_n, c_n, z.
struct Transcript {
    Bytes instance;
    std::vector<Bytes> messages;
    std::vector<uint64_t> challenges;
    Bytes response;
};

// Resumable prover state machine. Values are single-owner and copyable via
// clone(), which snapshots the full state so runs can be replayed bit-exactly
// from any point (rewinding).
class ProverSession {
  public:
    virtual ~ProverSession() = default;
    virtual std::unique_ptr<ProverSession> clone() const = 0;

    // a_1. Call once, before any challenge.
    virtual Bytes first_message() = 0;

    // Consume c_i; returns a_{i+1} for i < n and the response z for i = n.
    virtual Bytes next_message(uint64_t challenge) = 0;
};

// A (2n+1)-round public-coin interactive proof system.
class Scheme {
  public:
    virtual ~Scheme() = default;

    virtual std::string id() const = 0;
    virtual size_t rounds() const = 0;
    virtual const ChallengeSpace& challenge_space() const = 0;

    // (witness, instance)
    virtual std::pair<Bytes, Bytes> generate_instance(Rng& rng) const = 0;

    virtual std::unique_ptr<ProverSession> prover(const Bytes& witness, const Bytes& instance,
                                                  Rng rng) const = 0;

    // Deterministic verification predicate on the full conversation.
    virtual bool predicate(const Transcript& t) const = 0;

    // Special HVZK hook: first message a such that (a, challenge, response)
    // is accepted. Schemes without it return nullopt.
    virtual std::optional<Bytes> simulate_first_message(const Bytes& instance, uint64_t challenge,
                                                        const Bytes& response) const {
        (void)instance;
        (void)challenge;
        (void)response;
        return std::nullopt;
    }

    // Response sampler matching the honest response distribution, for
    // simulator-based proving.
    virtual Bytes sample_response(const Bytes& instance, Rng& rng) const;

    Scheme() = default;
    Scheme(const Scheme&) = delete;
    Scheme& operator=(const Scheme&) = delete;

    // HVZK simulator as a transcript producer (always-accepted output).
    virtual Transcript simulator_transcript(const Bytes& instance, Rng& rng) const;
};

// Shape check plus predicate evaluation. Pure; throws on shape mismatch.
bool verify_transcript(const Scheme& scheme, const Transcript& t);

// Honest interactive run with verifier challenges drawn from `rng` (or the
// provided list).
Transcript interact(const Scheme& scheme, const Bytes& witness, const Bytes& instance,
                    Rng prover_rng, Rng& verifier_rng);
Transcript interact_with_challenges(const Scheme& scheme, const Bytes& witness,
                                    const Bytes& instance, Rng prover_rng,
                                    const std::vector<uint64_t>& challenges);

}  // namespace fsq::pcip
