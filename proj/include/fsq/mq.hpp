#pragma once

#include <memory>
#include <vector>

#include "fsq/protocol.hpp"

namespace fsq::mq {

// Vectors over GF(p), one byte per element.
using FieldVec = std::vector<uint8_t>;

// Random multivariate quadratic system F: GF(p)^nv -> GF(p)^m with its
// bilinear polar form G(x, y) = F(x+y) - F(x) - F(y).
struct MqParams {
    uint8_t field = 7;  // prime
    size_t nv = 5;      // variables
    size_t m = 5;       // equations

    // quad[k][i][j] (i <= j) and lin[k][i] are the coefficients of F_k.
    std::vector<std::vector<std::vector<uint8_t>>> quad;
    std::vector<std::vector<uint8_t>> lin;

    static MqParams generate(uint8_t field, size_t nv, size_t m, uint64_t seed);

    FieldVec eval(const FieldVec& x) const;                      // F(x)
    FieldVec polar(const FieldVec& x, const FieldVec& y) const;  // G(x, y)

    uint8_t add(uint8_t a, uint8_t b) const { return static_cast<uint8_t>((a + b) % field); }
    uint8_t sub(uint8_t a, uint8_t b) const { return static_cast<uint8_t>((a + field - b) % field); }
    uint8_t mul(uint8_t a, uint8_t b) const { return static_cast<uint8_t>((a * b) % field); }

    FieldVec vec_add(const FieldVec& a, const FieldVec& b) const;
    FieldVec vec_sub(const FieldVec& a, const FieldVec& b) const;
    FieldVec vec_scale(uint8_t c, const FieldVec& a) const;
    FieldVec random_vec(size_t len, Rng& rng) const;
};

// Hash commitment c = H(frame(payload, u)), 32 bytes.
Bytes commit(const Bytes& payload, const Bytes& opening);

// The 5-pass identification scheme: the prover splits s = r0 + r1, masks
// with (t0, e0), answers the field challenge alpha with t1 = alpha*r0 - t0
// and e1 = alpha*F(r0) - e0, and opens one of the two commitments on the
// 1-bit second challenge. Both challenges live in the same space of size
// `field`; only the low bit of the second challenge is significant.
class Scheme : public pcip::Scheme {
  public:
    explicit Scheme(MqParams params);

    std::string id() const override { return "mq5pass"; }
    size_t rounds() const override { return 2; }
    const pcip::ChallengeSpace& challenge_space() const override { return space_; }
    const MqParams& params() const { return params_; }

    static int open_bit(uint64_t second_challenge) { return static_cast<int>(second_challenge & 1); }

    std::pair<Bytes, Bytes> generate_instance(Rng& rng) const override;
    std::unique_ptr<pcip::ProverSession> prover(const Bytes& witness, const Bytes& instance,
                                                Rng rng) const override;
    bool predicate(const pcip::Transcript& t) const override;

    FieldVec decode_vec(const Bytes& b, size_t len) const;

  private:
    MqParams params_;
    pcip::ChallengeSpace space_;
};

}  // namespace fsq::mq
