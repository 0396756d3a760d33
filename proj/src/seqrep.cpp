#include "fsq/seqrep.hpp"

#include <stdexcept>

namespace fsq::pcip {

namespace {

uint64_t enlarged_cardinality(uint64_t inner, unsigned pad_bits) {
    if (pad_bits > 20) throw std::invalid_argument("sequential_repeat: pad_bits too large");
    unsigned __int128 card = static_cast<unsigned __int128>(inner) << pad_bits;
    if (card > (unsigned __int128)UINT64_MAX)
        throw std::invalid_argument("sequential_repeat: enlarged challenge space overflows");
    return static_cast<uint64_t>(card);
}

}  // namespace

SequentialRepetition::SequentialRepetition(std::shared_ptr<const Scheme> inner, size_t reps,
                                           unsigned pad_bits)
    : inner_(std::move(inner)),
      reps_(reps),
      pad_bits_(pad_bits),
      space_(enlarged_cardinality(inner_->challenge_space().cardinality, pad_bits)) {
    if (inner_->rounds() != 1)
        throw std::invalid_argument("sequential_repeat: inner scheme must be a Sigma-protocol");
    if (reps_ == 0) throw std::invalid_argument("sequential_repeat: reps must be positive");
}

std::string SequentialRepetition::id() const {
    return "seq(" + inner_->id() + ",reps=" + std::to_string(reps_) +
           ",pad=" + std::to_string(pad_bits_) + ")";
}

std::pair<Bytes, Bytes> SequentialRepetition::generate_instance(Rng& rng) const {
    return inner_->generate_instance(rng);
}

namespace {

class Session : public ProverSession {
  public:
    Session(const SequentialRepetition* scheme, Bytes witness, Bytes instance, Rng rng)
        : scheme_(scheme), witness_(std::move(witness)), instance_(std::move(instance)), rng_(std::move(rng)) {}

    Session(const Session& other)
        : scheme_(other.scheme_),
          witness_(other.witness_),
          instance_(other.instance_),
          rng_(other.rng_),
          rep_(other.rep_),
          current_(other.current_ ? other.current_->clone() : nullptr) {}

    std::unique_ptr<ProverSession> clone() const override { return std::make_unique<Session>(*this); }

    Bytes first_message() override {
        current_ = scheme_->inner().prover(witness_, instance_, rng_.child("rep", 0));
        return current_->first_message();
    }

    Bytes next_message(uint64_t challenge) override {
        Bytes y = current_->next_message(scheme_->inner_challenge(challenge));
        ++rep_;
        if (rep_ == scheme_->rounds()) return y;
        current_ = scheme_->inner().prover(witness_, instance_, rng_.child("rep", rep_));
        Bytes b = current_->first_message();
        return frame({b, y});
    }

  private:
    const SequentialRepetition* scheme_;
    Bytes witness_;
    Bytes instance_;
    Rng rng_;
    size_t rep_ = 0;
    std::unique_ptr<ProverSession> current_;
};

}  // namespace

std::unique_ptr<ProverSession> SequentialRepetition::prover(const Bytes& witness,
                                                            const Bytes& instance, Rng rng) const {
    return std::make_unique<Session>(this, witness, instance, std::move(rng));
}

bool SequentialRepetition::predicate(const Transcript& t) const {
    // Unravel the interleaving into inner triples and check each one.
    std::vector<Bytes> commitments(reps_), responses(reps_);
    commitments[0] = t.messages[0];
    for (size_t i = 1; i < reps_; ++i) {
        std::vector<Bytes> parts;
        try {
            parts = unframe(t.messages[i]);
        } catch (const std::exception&) {
            return false;
        }
        if (parts.size() != 2) return false;
        commitments[i] = parts[0];
        responses[i - 1] = parts[1];
    }
    responses[reps_ - 1] = t.response;

    for (size_t i = 0; i < reps_; ++i) {
        Transcript triple{t.instance, {commitments[i]}, {inner_challenge(t.challenges[i])}, responses[i]};
        if (!inner_->predicate(triple)) return false;
    }
    return true;
}

std::shared_ptr<const Scheme> sequential_repeat(std::shared_ptr<const Scheme> sigma, size_t reps,
                                                unsigned pad_bits) {
    return std::make_shared<SequentialRepetition>(std::move(sigma), reps, pad_bits);
}

}  // namespace fsq::pcip
