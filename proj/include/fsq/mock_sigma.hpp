#pragma once

#include <memory>

#include "fsq/protocol.hpp"

namespace fsq::mock {

// Synthetic Sigma-protocol for a false instance: first messages are the
// gamma-bit strings, and (a, c, z) is accepted iff c = phi(a) and
// z = psi(a) for seeded pseudorandom maps phi, psi. The ZK simulator draws
// a uniformly and emits (a, phi(a), psi(a)), which is always accepted, and
// a determines c among accepting triples.
class MockSigma : public pcip::Scheme {
  public:
    MockSigma(unsigned min_entropy_gamma, uint64_t challenge_cardinality, uint64_t seed);

    std::string id() const override { return "mock-sigma"; }
    size_t rounds() const override { return 1; }
    const pcip::ChallengeSpace& challenge_space() const override { return space_; }
    unsigned gamma() const { return gamma_; }

    uint64_t phi(const Bytes& a) const;
    Bytes psi(const Bytes& a) const;

    Bytes encode_first_message(uint64_t a_value) const;
    uint64_t first_message_count() const { return uint64_t{1} << gamma_; }

    std::pair<Bytes, Bytes> generate_instance(Rng& rng) const override;
    std::unique_ptr<pcip::ProverSession> prover(const Bytes& witness, const Bytes& instance,
                                                Rng rng) const override;
    bool predicate(const pcip::Transcript& t) const override;
    pcip::Transcript simulator_transcript(const Bytes& instance, Rng& rng) const override;

    static constexpr size_t kResponseLen = 16;

  private:
    unsigned gamma_;
    pcip::ChallengeSpace space_;
    uint64_t seed_;
};

}  // namespace fsq::mock
