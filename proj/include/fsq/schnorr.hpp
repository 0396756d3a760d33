#pragma once

#include <cstdint>
#include <memory>

#include "fsq/protocol.hpp"

namespace fsq::schnorr {

// Modular arithmetic on 64-bit operands via 128-bit intermediates.
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);
uint64_t invmod(uint64_t a, uint64_t m);
bool is_prime(uint64_t n);

// Subgroup parameters: g generates the order-l subgroup of Z_p^*.
struct Params {
    uint64_t p = 23;  // prime modulus
    uint64_t l = 11;  // prime subgroup order, l | p-1
    uint64_t g = 2;   // generator of the order-l subgroup

    void validate() const;
    static Params desk() { return Params{23, 11, 2}; }

    // Safe prime p = 2l+1 with l prime, seeded search.
    static Params generate(unsigned bits, uint64_t seed);
};

uint64_t commit(const Params& params, uint64_t r);                       // a = g^r mod p
uint64_t respond(const Params& params, uint64_t s, uint64_t r, uint64_t c);  // z = r + c s mod l
bool verify_triple(const Params& params, uint64_t y, uint64_t a, uint64_t c, uint64_t z);

// Special HVZK: a = g^z * y^{-c} mod p, so (a, c, z) verifies.
uint64_t simulate(const Params& params, uint64_t y, uint64_t c, uint64_t z);

// Special soundness: two accepting transcripts with equal a and distinct
// challenges yield the witness s = (z1-z2)/(c1-c2) mod l.
struct ExtractInput {
    uint64_t a, c, z;
};
uint64_t extract(const Params& params, uint64_t y, const ExtractInput& t1, const ExtractInput& t2);

// Schnorr as a 3-round PCIP. Instances and witnesses are 8-byte big-endian
// encodings of y and s.
class Scheme : public pcip::Scheme {
  public:
    explicit Scheme(Params params, uint64_t challenge_cardinality = 0);

    std::string id() const override { return "schnorr"; }
    size_t rounds() const override { return 1; }
    const pcip::ChallengeSpace& challenge_space() const override { return space_; }
    const Params& params() const { return params_; }

    std::pair<Bytes, Bytes> generate_instance(Rng& rng) const override;
    std::unique_ptr<pcip::ProverSession> prover(const Bytes& witness, const Bytes& instance,
                                                Rng rng) const override;
    bool predicate(const pcip::Transcript& t) const override;
    std::optional<Bytes> simulate_first_message(const Bytes& instance, uint64_t challenge,
                                                const Bytes& response) const override;
    Bytes sample_response(const Bytes& instance, Rng& rng) const override;

    Bytes encode_element(uint64_t v) const { return be_fixed(v, 8); }
    uint64_t decode_element(const Bytes& b) const;

  private:
    Params params_;
    pcip::ChallengeSpace space_;
};

}  // namespace fsq::schnorr
