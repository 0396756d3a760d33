#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fsq/fs.hpp"
#include "fsq/or_proof.hpp"
#include "fsq/schnorr.hpp"
#include "fsq/seqrep.hpp"
#include "fsq/signature.hpp"

using namespace fsq;

namespace {

const schnorr::Params kDesk = schnorr::Params::desk();

std::shared_ptr<const pcip::Scheme> schnorr_scheme() {
    return std::make_shared<schnorr::Scheme>(kDesk);
}

}  // namespace

TEST_CASE("derive_challenges matches the reference XOF (KAT)") {
    rom::XofOracle oracle((pcip::ChallengeSpace(11)));
    auto cs = fs::derive_challenges(oracle, to_bytes("inst"), {to_bytes("msg-a1"), to_bytes("msg-a2")});
    CHECK(cs == std::vector<uint64_t>{1, 2});
    CHECK(oracle.query_count() == 2);

    rom::XofOracle keyed(pcip::ChallengeSpace(256), to_bytes("K"));
    auto ds = fs::derive_challenges(keyed, to_bytes("x"), {to_bytes("a"), to_bytes("b")});
    CHECK(ds == std::vector<uint64_t>{255, 141});
}

TEST_CASE("derive_challenges under a constant oracle") {
    rom::ConstantOracle oracle(pcip::ChallengeSpace(11), 4);
    auto cs = fs::derive_challenges(oracle, to_bytes("x"), {to_bytes("a"), to_bytes("b"), to_bytes("c")});
    CHECK(cs == std::vector<uint64_t>{4, 4, 4});
}

TEST_CASE("fs prove/verify round trip, n = 1 and n = 2") {
    rom::XofOracle oracle((pcip::ChallengeSpace(11)));
    auto sigma = schnorr_scheme();
    Rng rng("fs-roundtrip", 1);
    auto [w, x] = sigma->generate_instance(rng);

    auto proof = fs::prove(*sigma, w, oracle, x, Rng("fs-prover", 1));
    CHECK(fs::verify(*sigma, oracle, proof));

    auto twice = pcip::sequential_repeat(sigma, 2, 0);
    auto [w2, x2] = twice->generate_instance(rng);
    auto proof2 = fs::prove(*twice, w2, oracle, x2, Rng("fs-prover", 2));
    CHECK(fs::verify(*twice, oracle, proof2));

    // determinism: same seed, same bytes
    auto again = fs::prove(*twice, w2, oracle, x2, Rng("fs-prover", 2));
    CHECK(fs::serialize_proof(again) == fs::serialize_proof(proof2));
}

TEST_CASE("fs prover and verifier each issue exactly n queries") {
    rom::XofOracle oracle((pcip::ChallengeSpace(11)));
    auto scheme = pcip::sequential_repeat(schnorr_scheme(), 3, 0);
    Rng rng("fs-queries", 3);
    auto [w, x] = scheme->generate_instance(rng);
    oracle.reset_query_count();
    auto proof = fs::prove(*scheme, w, oracle, x, Rng("p", 0));
    CHECK(oracle.query_count() == 3);
    oracle.reset_query_count();
    CHECK(fs::verify(*scheme, oracle, proof));
    CHECK(oracle.query_count() == 3);
}

TEST_CASE("single bit flips in a1 or z are rejected") {
    rom::XofOracle oracle((pcip::ChallengeSpace(11)));
    auto scheme = pcip::sequential_repeat(schnorr_scheme(), 2, 0);
    Rng rng("fs-flip", 4);
    auto [w, x] = scheme->generate_instance(rng);
    auto proof = fs::prove(*scheme, w, oracle, x, Rng("p", 1));
    int false_accepts = 0;
    int trials = 0;
    for (size_t byte = 0; byte < proof.messages[0].size(); ++byte) {
        for (int bit = 0; bit < 8 && trials < 1000; ++bit, ++trials) {
            auto tampered = proof;
            tampered.messages[0][byte] ^= static_cast<uint8_t>(1 << bit);
            if (fs::verify(*scheme, oracle, tampered)) ++false_accepts;
        }
    }
    for (size_t byte = 0; byte < proof.response.size(); ++byte) {
        for (int bit = 0; bit < 8 && trials < 2000; ++bit, ++trials) {
            auto tampered = proof;
            tampered.response[byte] ^= static_cast<uint8_t>(1 << bit);
            if (fs::verify(*scheme, oracle, tampered)) ++false_accepts;
        }
    }
    CHECK(false_accepts == 0);
}

TEST_CASE("oracle substitution rejects: verifying under a different table fails") {
    // Record the proof's query points, then re-verify under every table
    // that differs somewhere on that domain.
    auto sigma = schnorr_scheme();
    pcip::ChallengeSpace space(11);
    rom::XofOracle base(space);
    Rng rng("fs-subst", 5);
    auto [w, x] = sigma->generate_instance(rng);
    auto proof = fs::prove(*sigma, w, base, x, Rng("p", 2));

    Bytes point = fs::challenge_input(space, 1, x, 0, proof.messages[0]);
    uint64_t honest_value = base.query(point);
    for (uint64_t v = 0; v < 11; ++v) {
        rom::OracleTable table(space, {point}, {v});
        CHECK(fs::verify(*sigma, table, proof) == (v == honest_value));
    }
}

TEST_CASE("hash_chain matches the reference values and the table oracle") {
    rom::XofOracle oracle((pcip::ChallengeSpace(16)));
    auto chain = fs::hash_chain(oracle, to_bytes("x0"), {to_bytes("x1"), to_bytes("x2"), to_bytes("x3")});
    CHECK(chain == std::vector<uint64_t>{12, 5, 6});

    // n = 1 base case
    auto single = fs::hash_chain(oracle, to_bytes("x0"), {to_bytes("x1")});
    CHECK(single == std::vector<uint64_t>{12});

    // constant oracle: all links equal the constant
    rom::ConstantOracle constant(pcip::ChallengeSpace(16), 9);
    auto flat = fs::hash_chain(constant, to_bytes("x0"), {to_bytes("x1"), to_bytes("x2")});
    CHECK(flat == std::vector<uint64_t>{9, 9});

    // explicit 4-point table: the chain is two sequential lookups
    pcip::ChallengeSpace space(4);
    Bytes p1 = frame({to_bytes("x0"), to_bytes("x1")});
    Bytes p2 = frame({space.encode(2), to_bytes("x2")});
    rom::OracleTable table(space, {p1, p2}, {2, 3});
    auto looked = fs::hash_chain(table, to_bytes("x0"), {to_bytes("x1"), to_bytes("x2")});
    CHECK(looked == std::vector<uint64_t>{2, 3});
}

TEST_CASE("proof serialization round trips and carries the magic") {
    fs::FSProof proof{to_bytes("inst"), {to_bytes("a1"), to_bytes("a2")}, to_bytes("zz")};
    Bytes data = fs::serialize_proof(proof);
    CHECK(data[0] == 'F');
    CHECK(data[1] == 'S');
    CHECK(data[2] == 'Q');
    CHECK(data[3] == 'P');
    CHECK(data[4] == 0x01);
    auto back = fs::deserialize_proof(data);
    CHECK(back.instance == proof.instance);
    CHECK(back.messages == proof.messages);
    CHECK(back.response == proof.response);
    Bytes truncated(data.begin(), data.end() - 3);
    CHECK_THROWS(fs::deserialize_proof(truncated));
}

TEST_CASE("signature round trip over sequentially repeated schnorr") {
    auto scheme = pcip::sequential_repeat(schnorr_scheme(), 2, 0);
    rom::XofOracle oracle((pcip::ChallengeSpace(11)));
    auto keys = sig::keygen(*scheme, 77);
    Bytes m = to_bytes("message to sign");
    auto signature = sig::sign(*scheme, keys.secret_key, keys.public_key, m, oracle, 5);
    CHECK(sig::verify(*scheme, keys.public_key, m, signature, oracle));
    CHECK_FALSE(sig::verify(*scheme, keys.public_key, to_bytes("other message"), signature, oracle));

    // swapped middle messages change the challenge chain
    auto swapped = signature;
    std::swap(swapped.messages[0], swapped.messages[1]);
    CHECK_FALSE(sig::verify(*scheme, keys.public_key, m, swapped, oracle));

    // empty message is well defined
    auto empty_sig = sig::sign(*scheme, keys.secret_key, keys.public_key, Bytes{}, oracle, 6);
    CHECK(sig::verify(*scheme, keys.public_key, Bytes{}, empty_sig, oracle));

    // determinism
    auto again = sig::sign(*scheme, keys.secret_key, keys.public_key, m, oracle, 5);
    CHECK(sig::serialize_signature(scheme->id(), again) ==
          sig::serialize_signature(scheme->id(), signature));
}

TEST_CASE("keygen: distinct seeds give distinct keys") {
    auto scheme = schnorr_scheme();
    std::set<Bytes> keys;
    for (uint64_t seed = 0; seed < 1000; ++seed) keys.insert(sig::keygen(*scheme, seed).public_key);
    // collisions only when seeds collide modulo the tiny desk group
    CHECK(keys.size() == 11);  // all 11 group elements hit for p=23
    auto big = std::make_shared<schnorr::Scheme>(schnorr::Params::generate(40, 2));
    std::set<Bytes> big_keys;
    for (uint64_t seed = 0; seed < 1000; ++seed) big_keys.insert(sig::keygen(*big, seed).public_key);
    CHECK(big_keys.size() == 1000);
}

TEST_CASE("sign equals sign_via_fs_equivalence byte for byte") {
    auto scheme = pcip::sequential_repeat(schnorr_scheme(), 2, 0);
    rom::XofOracle oracle((pcip::ChallengeSpace(11)));
    Rng rng("sig-equiv", 0);
    for (int i = 0; i < 100; ++i) {
        auto keys = sig::keygen(*scheme, rng.u64());
        Bytes m = rng.bytes(rng.below(64));
        uint64_t seed = rng.u64();
        auto direct = sig::sign(*scheme, keys.secret_key, keys.public_key, m, oracle, seed);
        auto via_fs = sig::sign_via_fs_equivalence(*scheme, keys.secret_key, keys.public_key, m,
                                                   oracle, seed);
        REQUIRE(sig::serialize_signature(scheme->id(), direct) ==
                sig::serialize_signature(scheme->id(), via_fs));
    }
}

TEST_CASE("classic n=1 signature: challenge binds pk and m in the first hash") {
    auto scheme = schnorr_scheme();
    pcip::ChallengeSpace space(11);
    rom::XofOracle oracle(space);
    auto keys = sig::keygen(*scheme, 3);
    Bytes m = to_bytes("m");
    auto signature = sig::sign(*scheme, keys.secret_key, keys.public_key, m, oracle, 9);
    // recompute c = H(frame(0, <pk, m>, a)) and check the triple directly
    uint64_t c = oracle.query(
        fs::challenge_input(space, 1, sig::bind_instance(keys.public_key, m), 0, signature.messages[0]));
    schnorr::Scheme concrete(kDesk);
    CHECK(schnorr::verify_triple(kDesk, concrete.decode_element(keys.public_key),
                                 concrete.decode_element(signature.messages[0]), c,
                                 concrete.decode_element(signature.response)));
}

TEST_CASE("uniqueness checker finds no violations on honest data") {
    // Plain Schnorr over a large subgroup: responses are unique given
    // (x, a, c), and honest first messages never collide at this size.
    auto big = std::make_shared<schnorr::Scheme>(schnorr::Params::generate(40, 6));
    Rng rng("uniq", 8);
    std::vector<pcip::Transcript> accepting;
    auto [w, x] = big->generate_instance(rng);
    for (int i = 0; i < 50; ++i) {
        Rng vrng = rng.child("v", i);
        auto t = pcip::interact(*big, w, x, rng.child("p", i), vrng);
        if (pcip::verify_transcript(*big, t)) accepting.push_back(t);
    }
    CHECK(accepting.size() == 50);
    CHECK_FALSE(sig::find_uniqueness_violation(*big, accepting).has_value());
}

TEST_CASE("sequential repetition genuinely lacks unique responses") {
    // Two honest conversations agreeing on (a_1, c_1) but using fresh
    // second-round commitments extend the same prefix with different a_2:
    // the checker must flag exactly this.
    auto scheme = pcip::sequential_repeat(schnorr_scheme(), 2, 0);
    const uint64_t s = 3, y = 8, c1 = 7, c2 = 2;
    const uint64_t r1 = 5, r2 = 6, r2_alt = 9;
    auto build = [&](uint64_t second_r) {
        uint64_t a1 = schnorr::commit(kDesk, r1);
        uint64_t z1 = schnorr::respond(kDesk, s, r1, c1);
        uint64_t a2 = schnorr::commit(kDesk, second_r);
        uint64_t z2 = schnorr::respond(kDesk, s, second_r, c2);
        return pcip::Transcript{be_fixed(y, 8),
                                {be_fixed(a1, 8), frame({be_fixed(a2, 8), be_fixed(z1, 8)})},
                                {c1, c2},
                                be_fixed(z2, 8)};
    };
    auto t1 = build(r2), t2 = build(r2_alt);
    REQUIRE(pcip::verify_transcript(*scheme, t1));
    REQUIRE(pcip::verify_transcript(*scheme, t2));
    auto v = sig::find_uniqueness_violation(*scheme, {t1, t2});
    REQUIRE(v.has_value());
    CHECK(v->position == 2);
}

TEST_CASE("uniqueness checker flags a manufactured violation") {
    // Two accepting Schnorr transcripts with the same (x, a, c) but
    // different z cannot exist, so manufacture one at the z slot via the
    // simulator on a different challenge... instead check the detector on a
    // synthetic pair for a permissive predicate.
    auto scheme = schnorr_scheme();
    pcip::Transcript t1{be_fixed(8, 8), {be_fixed(9, 8)}, {7}, be_fixed(4, 8)};
    pcip::Transcript t2 = t1;
    t2.response = be_fixed(5, 8);  // same prefix, different z
    auto v = sig::find_uniqueness_violation(*scheme, {t1, t2});
    REQUIRE(v.has_value());
    CHECK(v->position == 2);  // z is a_{n+1} with n=1
}

TEST_CASE("signature serialization round trips") {
    sig::Signature s{{to_bytes("a1"), to_bytes("a2")}, to_bytes("z")};
    Bytes data = sig::serialize_signature("seq(schnorr,reps=2,pad=0)", s);
    auto [id, back] = sig::deserialize_signature(data);
    CHECK(id == "seq(schnorr,reps=2,pad=0)");
    CHECK(back.messages == s.messages);
    CHECK(back.response == s.response);
}

TEST_CASE("or proof: both branches, tampering, swapping") {
    auto s0 = schnorr_scheme();
    auto s1 = schnorr_scheme();
    rom::XofOracle oracle((pcip::ChallengeSpace(11)));
    Rng rng("or-test", 1);
    auto [w0, x0] = s0->generate_instance(rng);
    auto [w1, x1] = s1->generate_instance(rng);

    auto pi0 = orp::or_prove(*s0, *s1, x0, x1, 0, w0, oracle, 10);
    CHECK(orp::or_verify(*s0, *s1, x0, x1, pi0, oracle));
    auto pi1 = orp::or_prove(*s0, *s1, x0, x1, 1, w1, oracle, 11);
    CHECK(orp::or_verify(*s0, *s1, x0, x1, pi1, oracle));

    // both instances true: either branch works (strictly easier); same x
    auto pi_same = orp::or_prove(*s0, *s1, x0, x0, 1, w0, oracle, 12);
    CHECK(orp::or_verify(*s0, *s1, x0, x0, pi_same, oracle));

    auto tampered = pi0;
    tampered.z0[7] ^= 1;
    CHECK_FALSE(orp::or_verify(*s0, *s1, x0, x1, tampered, oracle));

    // Swapping a0 and a1 rewires both challenges. At desk size the two
    // commitments collide with probability 1/11 (making the swap a no-op),
    // so this check runs over a large subgroup.
    auto big = std::make_shared<schnorr::Scheme>(schnorr::Params::generate(40, 17));
    Rng brng("or-swap", 4);
    auto [bw0, bx0] = big->generate_instance(brng);
    auto [bw1, bx1] = big->generate_instance(brng);
    int accepts = 0;
    for (int i = 0; i < 100; ++i) {
        auto pi = orp::or_prove(*big, *big, bx0, bx1, 0, bw0, oracle, 100 + i);
        REQUIRE(pi.a0 != pi.a1);
        std::swap(pi.a0, pi.a1);
        if (orp::or_verify(*big, *big, bx0, bx1, pi, oracle)) ++accepts;
    }
    CHECK(accepts == 0);
}

TEST_CASE("or proof issues exactly two queries and wires challenges over cross") {
    auto s0 = schnorr_scheme();
    auto s1 = schnorr_scheme();
    rom::XofOracle oracle((pcip::ChallengeSpace(11)));
    Rng rng("or-wire", 2);
    auto [w0, x0] = s0->generate_instance(rng);
    auto [w1, x1] = s1->generate_instance(rng);
    oracle.reset_query_count();
    auto pi = orp::or_prove(*s0, *s1, x0, x1, 0, w0, oracle, 42);
    CHECK(oracle.query_count() == 2);
    oracle.reset_query_count();
    CHECK(orp::or_verify(*s0, *s1, x0, x1, pi, oracle));
    CHECK(oracle.query_count() == 2);
    // c0 depends only on a1; c1 only on a0
    CHECK(orp::or_challenge_input(1, x0, x1, pi.a1) != orp::or_challenge_input(0, x0, x1, pi.a0));

    // witness indistinguishability smoke test: identical shape for b=0 / b=1
    auto pi_b1 = orp::or_prove(*s0, *s1, x0, x1, 1, w1, oracle, 42);
    CHECK(pi.a0.size() == pi_b1.a0.size());
    CHECK(pi.a1.size() == pi_b1.a1.size());
    CHECK(pi.z0.size() == pi_b1.z0.size());
    CHECK(pi.z1.size() == pi_b1.z1.size());
}

TEST_CASE("or proof completeness, 1000 seeded trials per branch") {
    auto s0 = schnorr_scheme();
    auto s1 = schnorr_scheme();
    rom::XofOracle oracle((pcip::ChallengeSpace(11)));
    Rng rng("or-complete", 3);
    for (int branch = 0; branch < 2; ++branch) {
        for (int i = 0; i < 1000; ++i) {
            auto [w0, x0] = s0->generate_instance(rng);
            auto [w1, x1] = s1->generate_instance(rng);
            auto pi = orp::or_prove(*s0, *s1, x0, x1, branch, branch == 0 ? w0 : w1, oracle,
                                    rng.u64());
            REQUIRE(orp::or_verify(*s0, *s1, x0, x1, pi, oracle));
        }
    }
}

TEST_CASE("or proof serialization") {
    orp::OrProof pi{to_bytes("a0"), to_bytes("a1"), to_bytes("z0"), to_bytes("z1")};
    Bytes data = orp::serialize_or_proof(to_bytes("x0"), to_bytes("x1"), pi);
    auto [x0, x1, back] = orp::deserialize_or_proof(data);
    CHECK(x0 == to_bytes("x0"));
    CHECK(x1 == to_bytes("x1"));
    CHECK(back.a0 == pi.a0);
    CHECK(back.z1 == pi.z1);
    CHECK_THROWS(orp::deserialize_or_proof(Bytes{0x46, 0x53}));
}
