#include "fsq/mq.hpp"

#include <stdexcept>

#include "fsq/schnorr.hpp"

namespace fsq::mq {

MqParams MqParams::generate(uint8_t field, size_t nv, size_t m, uint64_t seed) {
    if (!schnorr::is_prime(field)) throw std::invalid_argument("mq: field size must be prime");
    if (field < 3) throw std::invalid_argument("mq: field must have at least 3 elements");
    if (nv == 0 || m == 0) throw std::invalid_argument("mq: nv and m must be positive");
    MqParams params;
    params.field = field;
    params.nv = nv;
    params.m = m;
    Rng rng("mq-params", seed);
    params.quad.resize(m);
    params.lin.resize(m);
    for (size_t k = 0; k < m; ++k) {
        params.quad[k].assign(nv, std::vector<uint8_t>(nv, 0));
        params.lin[k].resize(nv);
        for (size_t i = 0; i < nv; ++i) {
            for (size_t j = i; j < nv; ++j)
                params.quad[k][i][j] = static_cast<uint8_t>(rng.below(field));
            params.lin[k][i] = static_cast<uint8_t>(rng.below(field));
        }
    }
    return params;
}

FieldVec MqParams::eval(const FieldVec& x) const {
    if (x.size() != nv) throw std::invalid_argument("mq: eval dimension mismatch");
    FieldVec out(m, 0);
    for (size_t k = 0; k < m; ++k) {
        unsigned acc = 0;
        for (size_t i = 0; i < nv; ++i) {
            for (size_t j = i; j < nv; ++j) acc += quad[k][i][j] * x[i] % field * x[j];
            acc += lin[k][i] * x[i];
        }
        out[k] = static_cast<uint8_t>(acc % field);
    }
    return out;
}

FieldVec MqParams::polar(const FieldVec& x, const FieldVec& y) const {
    return vec_sub(vec_sub(eval(vec_add(x, y)), eval(x)), eval(y));
}

FieldVec MqParams::vec_add(const FieldVec& a, const FieldVec& b) const {
    if (a.size() != b.size()) throw std::invalid_argument("mq: vector size mismatch");
    FieldVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = add(a[i], b[i]);
    return out;
}

FieldVec MqParams::vec_sub(const FieldVec& a, const FieldVec& b) const {
    if (a.size() != b.size()) throw std::invalid_argument("mq: vector size mismatch");
    FieldVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = sub(a[i], b[i]);
    return out;
}

FieldVec MqParams::vec_scale(uint8_t c, const FieldVec& a) const {
    FieldVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = mul(c, a[i]);
    return out;
}

FieldVec MqParams::random_vec(size_t len, Rng& rng) const {
    FieldVec out(len);
    for (auto& v : out) v = static_cast<uint8_t>(rng.below(field));
    return out;
}

Bytes commit(const Bytes& payload, const Bytes& opening) {
    return shake256(frame({to_bytes("FSQ/v1/com"), payload, opening}), 32);
}

Scheme::Scheme(MqParams params) : params_(std::move(params)), space_(params_.field) {}

FieldVec Scheme::decode_vec(const Bytes& b, size_t len) const {
    if (b.size() != len) throw std::invalid_argument("mq: bad vector encoding");
    for (uint8_t v : b)
        if (v >= params_.field) throw std::invalid_argument("mq: element out of field");
    return FieldVec(b.begin(), b.end());
}

std::pair<Bytes, Bytes> Scheme::generate_instance(Rng& rng) const {
    FieldVec s = params_.random_vec(params_.nv, rng);
    FieldVec v = params_.eval(s);
    return {Bytes(s.begin(), s.end()), Bytes(v.begin(), v.end())};
}

namespace {

constexpr size_t kOpeningLen = 16;

struct ProverState {
    FieldVec r0, r1, t0, e0;
    Bytes u0, u1;
    uint8_t alpha = 0;
};

class Session : public pcip::ProverSession {
  public:
    Session(const Scheme* scheme, FieldVec secret, Rng rng)
        : scheme_(scheme), secret_(std::move(secret)), rng_(std::move(rng)) {}

    std::unique_ptr<pcip::ProverSession> clone() const override {
        return std::make_unique<Session>(*this);
    }

    Bytes first_message() override {
        const MqParams& P = scheme_->params();
        st_.r0 = P.random_vec(P.nv, rng_);
        st_.r1 = P.vec_sub(secret_, st_.r0);
        st_.t0 = P.random_vec(P.nv, rng_);
        st_.e0 = P.random_vec(P.m, rng_);
        st_.u0 = rng_.bytes(kOpeningLen);
        st_.u1 = rng_.bytes(kOpeningLen);
        Bytes c0 = commit(frame({bytes_of(st_.r0), bytes_of(st_.t0), bytes_of(st_.e0)}), st_.u0);
        Bytes c1 = commit(frame({bytes_of(st_.r1), bytes_of(P.vec_add(P.polar(st_.t0, st_.r1), st_.e0))}),
                          st_.u1);
        return frame({c0, c1});
    }

    Bytes next_message(uint64_t challenge) override {
        const MqParams& P = scheme_->params();
        if (stage_ == 0) {
            ++stage_;
            st_.alpha = static_cast<uint8_t>(challenge % P.field);
            FieldVec t1 = P.vec_sub(P.vec_scale(st_.alpha, st_.r0), st_.t0);
            FieldVec e1 = P.vec_sub(P.vec_scale(st_.alpha, P.eval(st_.r0)), st_.e0);
            return frame({bytes_of(t1), bytes_of(e1)});
        }
        int b = Scheme::open_bit(challenge);
        return b == 0 ? frame({bytes_of(st_.r0), st_.u0}) : frame({bytes_of(st_.r1), st_.u1});
    }

  private:
    static Bytes bytes_of(const FieldVec& v) { return Bytes(v.begin(), v.end()); }

    const Scheme* scheme_;
    FieldVec secret_;
    Rng rng_;
    ProverState st_;
    int stage_ = 0;
};

}  // namespace

std::unique_ptr<pcip::ProverSession> Scheme::prover(const Bytes& witness, const Bytes&,
                                                    Rng rng) const {
    return std::make_unique<Session>(this, decode_vec(witness, params_.nv), std::move(rng));
}

bool Scheme::predicate(const pcip::Transcript& t) const {
    const MqParams& P = params_;
    try {
        FieldVec v = decode_vec(t.instance, P.m);
        auto commitments = unframe(t.messages[0]);
        auto mid = unframe(t.messages[1]);
        auto opening = unframe(t.response);
        if (commitments.size() != 2 || mid.size() != 2 || opening.size() != 2) return false;
        FieldVec t1 = decode_vec(mid[0], P.nv);
        FieldVec e1 = decode_vec(mid[1], P.m);
        uint8_t alpha = static_cast<uint8_t>(t.challenges[0] % P.field);
        int b = open_bit(t.challenges[1]);
        if (b == 0) {
            FieldVec r0 = decode_vec(opening[0], P.nv);
            FieldVec t0 = P.vec_sub(P.vec_scale(alpha, r0), t1);
            FieldVec e0 = P.vec_sub(P.vec_scale(alpha, P.eval(r0)), e1);
            Bytes payload = frame({opening[0], Bytes(t0.begin(), t0.end()), Bytes(e0.begin(), e0.end())});
            return commit(payload, opening[1]) == commitments[0];
        }
        FieldVec r1 = decode_vec(opening[0], P.nv);
        FieldVec w = P.vec_sub(P.vec_sub(P.vec_scale(alpha, P.vec_sub(v, P.eval(r1))), P.polar(t1, r1)), e1);
        Bytes payload = frame({opening[0], Bytes(w.begin(), w.end())});
        return commit(payload, opening[1]) == commitments[1];
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace fsq::mq
