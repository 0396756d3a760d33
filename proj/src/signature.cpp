#include "fsq/signature.hpp"

#include <stdexcept>

namespace fsq::sig {

namespace {

// The augmented scheme P*(x||m) = P(x): instances carry a bound message,
// verification and proving strip it and run the underlying scheme.
class AugmentedScheme : public pcip::Scheme {
  public:
    explicit AugmentedScheme(const pcip::Scheme& inner) : inner_(inner) {}

    std::string id() const override { return inner_.id() + "*"; }
    size_t rounds() const override { return inner_.rounds(); }
    const pcip::ChallengeSpace& challenge_space() const override { return inner_.challenge_space(); }

    std::pair<Bytes, Bytes> generate_instance(Rng& rng) const override {
        return inner_.generate_instance(rng);
    }

    std::unique_ptr<pcip::ProverSession> prover(const Bytes& witness, const Bytes& instance,
                                                Rng rng) const override {
        return inner_.prover(witness, strip(instance), std::move(rng));
    }

    bool predicate(const pcip::Transcript& t) const override {
        pcip::Transcript stripped = t;
        stripped.instance = strip(t.instance);
        return inner_.predicate(stripped);
    }

  private:
    static Bytes strip(const Bytes& bound) {
        auto fields = unframe(bound);
        if (fields.size() != 2) throw std::invalid_argument("augmented instance: expected (pk, m)");
        return fields[0];
    }

    const pcip::Scheme& inner_;
};

}  // namespace

KeyPair keygen(const pcip::Scheme& scheme, uint64_t seed) {
    Rng rng("fsq-keygen", seed);
    auto [witness, instance] = scheme.generate_instance(rng);
    return KeyPair{witness, instance};
}

Bytes bind_instance(const Bytes& public_key, const Bytes& message) {
    return frame({public_key, message});
}

Signature sign(const pcip::Scheme& scheme, const Bytes& secret_key, const Bytes& public_key,
               const Bytes& message, const rom::RandomOracle& oracle, uint64_t seed,
               const Bytes& associated_data) {
    // Direct implementation of the challenge chain; the first hash is the
    // only one that sees (pk, m).
    Bytes bound = bind_instance(public_key, message);
    auto session = scheme.prover(secret_key, public_key, Rng("fsq-sign", seed));
    Signature sig;
    uint64_t prev = 0;
    for (size_t i = 1; i <= scheme.rounds(); ++i) {
        Bytes msg = i == 1 ? session->first_message() : session->next_message(prev);
        prev = oracle.query(fs::challenge_input(oracle.space(), i, bound, prev, msg, associated_data));
        sig.messages.push_back(std::move(msg));
    }
    sig.response = session->next_message(prev);
    return sig;
}

bool verify(const pcip::Scheme& scheme, const Bytes& public_key, const Bytes& message,
            const Signature& signature, const rom::RandomOracle& oracle,
            const Bytes& associated_data) {
    if (signature.messages.size() != scheme.rounds())
        throw std::invalid_argument("sig::verify: signature shape does not match scheme");
    pcip::Transcript t;
    t.instance = public_key;
    t.messages = signature.messages;
    t.challenges = fs::derive_challenges(oracle, bind_instance(public_key, message),
                                         signature.messages, associated_data);
    t.response = signature.response;
    return pcip::verify_transcript(scheme, t);
}

Signature sign_via_fs_equivalence(const pcip::Scheme& scheme, const Bytes& secret_key,
                                  const Bytes& public_key, const Bytes& message,
                                  const rom::RandomOracle& oracle, uint64_t seed,
                                  const Bytes& associated_data) {
    AugmentedScheme augmented(scheme);
    fs::FSProof proof = fs::prove(augmented, secret_key, oracle,
                                  bind_instance(public_key, message), Rng("fsq-sign", seed),
                                  associated_data);
    return Signature{proof.messages, proof.response};
}

std::optional<UniquenessViolation> find_uniqueness_violation(
    const pcip::Scheme& scheme, const std::vector<pcip::Transcript>& accepting) {
    size_t n = scheme.rounds();
    for (size_t i = 0; i < accepting.size(); ++i) {
        for (size_t j = i + 1; j < accepting.size(); ++j) {
            const auto& s = accepting[i];
            const auto& t = accepting[j];
            if (s.instance != t.instance) continue;
            // The shared prefix must contain at least (a_1, c_1); scan for
            // the first difference and flag it when it lands on a message
            // position with every earlier message and challenge equal.
            if (s.messages[0] != t.messages[0]) continue;
            bool prefix_equal = s.challenges[0] == t.challenges[0];
            for (size_t k = 1; k < n && prefix_equal; ++k) {
                if (s.messages[k] != t.messages[k]) {
                    return UniquenessViolation{i, j, k + 1};
                }
                if (s.challenges[k] != t.challenges[k]) prefix_equal = false;
            }
            if (prefix_equal && s.response != t.response)
                return UniquenessViolation{i, j, n + 1};
        }
    }
    return std::nullopt;
}

Bytes serialize_signature(const std::string& scheme_id, const Signature& sig) {
    Bytes out = to_bytes("FSQS");
    out.push_back(0x01);
    std::vector<Bytes> fields;
    fields.push_back(to_bytes(scheme_id));
    fields.push_back(u32_be(static_cast<uint32_t>(sig.messages.size())));
    for (const auto& m : sig.messages) fields.push_back(m);
    fields.push_back(sig.response);
    append(out, frame(fields));
    return out;
}

std::pair<std::string, Signature> deserialize_signature(const Bytes& data) {
    if (data.size() < 5 || to_string(Bytes(data.begin(), data.begin() + 4)) != "FSQS" || data[4] != 0x01)
        throw std::runtime_error("signature file: bad magic or version");
    auto fields = unframe(Bytes(data.begin() + 5, data.end()));
    if (fields.size() < 3) throw std::runtime_error("signature file: missing fields");
    std::string scheme_id = to_string(fields[0]);
    if (fields[1].size() != 4) throw std::runtime_error("signature file: bad count field");
    uint32_t n = static_cast<uint32_t>(be_read(fields[1].data(), 4));
    if (fields.size() != 3 + n) throw std::runtime_error("signature file: field count mismatch");
    Signature sig;
    for (uint32_t i = 0; i < n; ++i) sig.messages.push_back(fields[2 + i]);
    sig.response = fields.back();
    return {scheme_id, sig};
}

}  // namespace fsq::sig
