#pragma once

#include <memory>

#include "fsq/protocol.hpp"

namespace fsq::pcip {

// Sequential repetition of a Sigma-protocol as a (2n+1)-round PCIP. The
// messages interleave as a_1 = b_1, a_i = (b_i, y_{i-1}), z = y_n, where
// (b_i, y_i) are the i-th inner commitment and response, and each challenge
// carries pad_bits extra low bits that verification ignores. The verifier
// accepts iff every inner triple (b_i, inner challenge, y_i) is accepted.
class SequentialRepetition : public Scheme {
  public:
    SequentialRepetition(std::shared_ptr<const Scheme> inner, size_t reps, unsigned pad_bits);

    std::string id() const override;
    size_t rounds() const override { return reps_; }
    const ChallengeSpace& challenge_space() const override { return space_; }
    const Scheme& inner() const { return *inner_; }
    unsigned pad_bits() const { return pad_bits_; }

    uint64_t inner_challenge(uint64_t c) const { return c >> pad_bits_; }

    std::pair<Bytes, Bytes> generate_instance(Rng& rng) const override;
    std::unique_ptr<ProverSession> prover(const Bytes& witness, const Bytes& instance,
                                          Rng rng) const override;
    bool predicate(const Transcript& t) const override;

  private:
    std::shared_ptr<const Scheme> inner_;
    size_t reps_;
    unsigned pad_bits_;
    ChallengeSpace space_;
};

std::shared_ptr<const Scheme> sequential_repeat(std::shared_ptr<const Scheme> sigma, size_t reps,
                                                unsigned pad_bits);

}  // namespace fsq::pcip
