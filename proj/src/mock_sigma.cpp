#include "fsq/mock_sigma.hpp"

#include <stdexcept>

namespace fsq::mock {

MockSigma::MockSigma(unsigned min_entropy_gamma, uint64_t challenge_cardinality, uint64_t seed)
    : gamma_(min_entropy_gamma), space_(challenge_cardinality), seed_(seed) {
    if (gamma_ == 0 || gamma_ > 40) throw std::invalid_argument("MockSigma: gamma must be in [1, 40]");
}

Bytes MockSigma::encode_first_message(uint64_t a_value) const {
    if (a_value >= first_message_count()) throw std::invalid_argument("MockSigma: first message out of range");
    return be_fixed(a_value, (gamma_ + 7) / 8);
}

uint64_t MockSigma::phi(const Bytes& a) const {
    XofStream stream(frame({to_bytes("FSQ/v1/mock-phi"), u64_be(seed_), a}));
    return stream.uniform_below(space_.cardinality);
}

Bytes MockSigma::psi(const Bytes& a) const {
    XofStream stream(frame({to_bytes("FSQ/v1/mock-psi"), u64_be(seed_), a}));
    return stream.next_bytes(kResponseLen);
}

std::pair<Bytes, Bytes> MockSigma::generate_instance(Rng&) const {
    // The instance is a fixed false statement; there is no witness.
    return {Bytes{}, to_bytes("mock-instance")};
}

namespace {

// Simulator-driven prover: emits a uniform a and answers with psi(a). The
// transcript is accepted exactly when the challenge happens to equal phi(a).
class Session : public pcip::ProverSession {
  public:
    Session(const MockSigma* scheme, Rng rng) : scheme_(scheme), rng_(std::move(rng)) {}

    std::unique_ptr<pcip::ProverSession> clone() const override {
        return std::make_unique<Session>(*this);
    }

    Bytes first_message() override {
        a_ = scheme_->encode_first_message(rng_.below(scheme_->first_message_count()));
        return a_;
    }

    Bytes next_message(uint64_t) override { return scheme_->psi(a_); }

  private:
    const MockSigma* scheme_;
    Bytes a_;
    Rng rng_;
};

}  // namespace

std::unique_ptr<pcip::ProverSession> MockSigma::prover(const Bytes&, const Bytes&, Rng rng) const {
    return std::make_unique<Session>(this, std::move(rng));
}

bool MockSigma::predicate(const pcip::Transcript& t) const {
    const Bytes& a = t.messages[0];
    if (a.size() != (gamma_ + 7) / 8) return false;
    if (be_read(a.data(), a.size()) >= first_message_count()) return false;
    return t.challenges[0] == phi(a) && t.response == psi(a);
}

pcip::Transcript MockSigma::simulator_transcript(const Bytes& instance, Rng& rng) const {
    Bytes a = encode_first_message(rng.below(first_message_count()));
    return pcip::Transcript{instance, {a}, {phi(a)}, psi(a)};
}

}  // namespace fsq::mock
