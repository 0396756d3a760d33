#include "fsq/q2.hpp"

#include <stdexcept>

namespace fsq::q2 {

namespace {

int c2_bit(const pcip::Transcript& t) { return static_cast<int>(t.challenges[1] & 1); }

}  // namespace

bool check_q2_pattern(const std::array<pcip::Transcript, 4>& ts) {
    for (const auto& t : ts) {
        if (t.messages.size() != 2 || t.challenges.size() != 2)
            throw std::invalid_argument("q2 pattern: transcripts must have two rounds");
        if (t.instance != ts[0].instance)
            throw std::invalid_argument("q2 pattern: instances differ");
        if (t.messages[0] != ts[0].messages[0])
            throw std::invalid_argument("q2 pattern: first messages differ");
    }
    bool c1_ok = ts[0].challenges[0] == ts[1].challenges[0] &&
                 ts[2].challenges[0] == ts[3].challenges[0] &&
                 ts[0].challenges[0] != ts[2].challenges[0];
    bool c2_ok = ts[0].challenges[1] == ts[2].challenges[1] &&
                 ts[1].challenges[1] == ts[3].challenges[1] &&
                 c2_bit(ts[0]) != c2_bit(ts[1]);
    return c1_ok && c2_ok;
}

FourTranscripts rewind_collect(const pcip::Scheme& scheme, const Bytes& witness,
                               const Bytes& instance, uint64_t seed) {
    if (scheme.rounds() != 2) throw std::invalid_argument("rewind_collect: scheme is not 5-round");
    uint64_t card = scheme.challenge_space().cardinality;
    if (card < 2) throw std::domain_error("rewind_collect: first challenge space too small");

    Rng rng("fsq-q2-rewind", seed);
    uint64_t alpha = rng.below(card);
    uint64_t alpha2 = rng.below(card - 1);
    if (alpha2 >= alpha) ++alpha2;  // uniform over values != alpha
    uint64_t beta0 = 2 * rng.below((card + 1) / 2);      // significant bit 0
    uint64_t beta1 = 2 * rng.below(card / 2) + 1;        // significant bit 1

    auto session = scheme.prover(witness, instance, rng.child("prover"));
    Bytes a1 = session->first_message();

    FourTranscripts out;
    const uint64_t firsts[4] = {alpha, alpha, alpha2, alpha2};
    const uint64_t seconds[4] = {beta0, beta1, beta0, beta1};
    for (int i = 0; i < 4; ++i) {
        auto run = session->clone();
        pcip::Transcript t;
        t.instance = instance;
        t.messages.push_back(a1);
        t.messages.push_back(run->next_message(firsts[i]));
        t.challenges = {firsts[i], seconds[i]};
        t.response = run->next_message(seconds[i]);
        out.accepted[i] = pcip::verify_transcript(scheme, t);
        out.transcripts[i] = std::move(t);
    }
    return out;
}

namespace {

struct Opening {
    mq::FieldVec vec;
    Bytes payload;
    Bytes randomness;
    Bytes commitment;
};

// Reconstruct the committed payload that a verified b=0 / b=1 transcript
// pins down, exactly as the verifier recomputed it.
Opening reconstruct(const mq::Scheme& scheme, const mq::FieldVec& v, const pcip::Transcript& t) {
    const mq::MqParams& P = scheme.params();
    auto commitments = unframe(t.messages[0]);
    auto mid = unframe(t.messages[1]);
    auto open = unframe(t.response);
    if (commitments.size() != 2 || mid.size() != 2 || open.size() != 2)
        throw std::invalid_argument("q2 extract: malformed transcript");
    mq::FieldVec t1 = scheme.decode_vec(mid[0], P.nv);
    mq::FieldVec e1 = scheme.decode_vec(mid[1], P.m);
    uint8_t alpha = static_cast<uint8_t>(t.challenges[0] % P.field);
    Opening result;
    result.vec = scheme.decode_vec(open[0], P.nv);
    result.randomness = open[1];
    if (mq::Scheme::open_bit(t.challenges[1]) == 0) {
        mq::FieldVec t0 = P.vec_sub(P.vec_scale(alpha, result.vec), t1);
        mq::FieldVec e0 = P.vec_sub(P.vec_scale(alpha, P.eval(result.vec)), e1);
        result.payload = frame({open[0], Bytes(t0.begin(), t0.end()), Bytes(e0.begin(), e0.end())});
        result.commitment = commitments[0];
    } else {
        mq::FieldVec w = P.vec_sub(
            P.vec_sub(P.vec_scale(alpha, P.vec_sub(v, P.eval(result.vec))), P.polar(t1, result.vec)), e1);
        result.payload = frame({open[0], Bytes(w.begin(), w.end())});
        result.commitment = commitments[1];
    }
    return result;
}

}  // namespace

ExtractResult q2_extract_mq(const mq::Scheme& scheme, const Bytes& instance_v,
                            const FourTranscripts& ts) {
    for (bool ok : ts.accepted)
        if (!ok) throw std::invalid_argument("q2 extract: all four transcripts must accept");
    if (!check_q2_pattern(ts.transcripts))
        throw std::invalid_argument("q2 extract: challenge pattern violated");

    const mq::MqParams& P = scheme.params();
    mq::FieldVec v = scheme.decode_vec(instance_v, P.m);

    // Indices 0,2 share one c2 bit; 1,3 the other.
    int zero_first = c2_bit(ts.transcripts[0]) == 0 ? 0 : 1;
    const auto& b0_a = ts.transcripts[zero_first];          // b=0 at alpha
    const auto& b0_b = ts.transcripts[zero_first + 2];      // b=0 at alpha'
    const auto& b1_a = ts.transcripts[1 - zero_first];      // b=1 at alpha
    const auto& b1_b = ts.transcripts[3 - zero_first];      // b=1 at alpha'

    Opening r0_a = reconstruct(scheme, v, b0_a);
    Opening r0_b = reconstruct(scheme, v, b0_b);
    Opening r1_a = reconstruct(scheme, v, b1_a);
    Opening r1_b = reconstruct(scheme, v, b1_b);

    // The second alpha pair must open the same commitments to the same
    // values; a mismatch is a hash collision exhibited explicitly.
    if (r0_a.payload != r0_b.payload || r0_a.randomness != r0_b.randomness)
        return CollisionWitness{r0_a.commitment, r0_a.payload, r0_a.randomness, r0_b.payload,
                                r0_b.randomness};
    if (r1_a.payload != r1_b.payload || r1_a.randomness != r1_b.randomness)
        return CollisionWitness{r1_a.commitment, r1_a.payload, r1_a.randomness, r1_b.payload,
                                r1_b.randomness};

    mq::FieldVec s = P.vec_add(r0_a.vec, r1_a.vec);
    if (P.eval(s) != v) return ExtractFailure{"F(r0+r1) != v"};
    return s;
}

}  // namespace fsq::q2
