#include "fsq/schnorr.hpp"

#include <stdexcept>

namespace fsq::schnorr {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

uint64_t invmod(uint64_t a, uint64_t m) {
    // Extended Euclid; m need not be prime but gcd(a, m) must be 1.
    int64_t t = 0, new_t = 1;
    int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a % m);
    while (new_r != 0) {
        int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::invalid_argument("invmod: not invertible");
    if (t < 0) t += static_cast<int64_t>(m);
    return static_cast<uint64_t>(t);
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Deterministic Miller-Rabin for 64-bit integers with the fixed base set.
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

void Params::validate() const {
    if (!is_prime(p) || !is_prime(l)) throw std::invalid_argument("schnorr: p and l must be prime");
    if ((p - 1) % l != 0) throw std::invalid_argument("schnorr: l must divide p-1");
    if (g <= 1 || g >= p) throw std::invalid_argument("schnorr: generator out of range");
    if (powmod(g, l, p) != 1) throw std::invalid_argument("schnorr: g does not have order l");
}

Params Params::generate(unsigned bits, uint64_t seed) {
    if (bits < 4 || bits > 62) throw std::invalid_argument("schnorr: bits must be in [4, 62]");
    Rng rng("schnorr-params", seed);
    while (true) {
        uint64_t l = (rng.u64() >> (64 - (bits - 1))) | (1ull << (bits - 2)) | 1ull;
        if (!is_prime(l)) continue;
        uint64_t p = 2 * l + 1;
        if (!is_prime(p)) continue;
        // Square a random element to land in the order-l subgroup.
        uint64_t h = 2 + rng.below(p - 3);
        uint64_t g = mulmod(h, h, p);
        if (g == 1) continue;
        Params params{p, l, g};
        params.validate();
        return params;
    }
}

uint64_t commit(const Params& params, uint64_t r) {
    if (r >= params.l) throw std::invalid_argument("schnorr: randomness out of range");
    return powmod(params.g, r, params.p);
}

uint64_t respond(const Params& params, uint64_t s, uint64_t r, uint64_t c) {
    if (s >= params.l || r >= params.l) throw std::invalid_argument("schnorr: witness/randomness out of range");
    return (r + mulmod(c % params.l, s, params.l)) % params.l;
}

bool verify_triple(const Params& params, uint64_t y, uint64_t a, uint64_t c, uint64_t z) {
    if (y == 0 || y >= params.p || a == 0 || a >= params.p || z >= params.l) return false;
    return powmod(params.g, z, params.p) == mulmod(a, powmod(y, c % params.l, params.p), params.p);
}

uint64_t simulate(const Params& params, uint64_t y, uint64_t c, uint64_t z) {
    if (y == 0 || y >= params.p || z >= params.l) throw std::invalid_argument("schnorr: simulate input out of range");
    uint64_t yc = powmod(y, c % params.l, params.p);
    return mulmod(powmod(params.g, z, params.p), invmod(yc, params.p), params.p);
}

uint64_t extract(const Params& params, uint64_t y, const ExtractInput& t1, const ExtractInput& t2) {
    if (t1.a != t2.a) throw std::invalid_argument("schnorr extract: first messages differ");
    if (!verify_triple(params, y, t1.a, t1.c, t1.z) || !verify_triple(params, y, t2.a, t2.c, t2.z))
        throw std::invalid_argument("schnorr extract: transcript does not verify");
    uint64_t c1 = t1.c % params.l, c2 = t2.c % params.l;
    if (c1 == c2) throw std::domain_error("schnorr extract: challenges collide mod l");
    uint64_t dz = (t1.z + params.l - t2.z) % params.l;
    uint64_t dc = (c1 + params.l - c2) % params.l;
    return mulmod(dz, invmod(dc, params.l), params.l);
}

Scheme::Scheme(Params params, uint64_t challenge_cardinality)
    : params_(params),
      space_(challenge_cardinality == 0 ? params.l : challenge_cardinality) {
    params_.validate();
    if (space_.cardinality > params_.l)
        throw std::invalid_argument("schnorr: challenge space larger than subgroup order");
}

uint64_t Scheme::decode_element(const Bytes& b) const {
    if (b.size() != 8) throw std::invalid_argument("schnorr: bad element encoding");
    return be_read(b.data(), 8);
}

std::pair<Bytes, Bytes> Scheme::generate_instance(Rng& rng) const {
    uint64_t s = rng.below(params_.l);
    uint64_t y = powmod(params_.g, s, params_.p);
    return {encode_element(s), encode_element(y)};
}

namespace {

class Session : public pcip::ProverSession {
  public:
    Session(Params params, uint64_t s, Rng rng) : params_(params), s_(s), rng_(std::move(rng)) {}

    std::unique_ptr<pcip::ProverSession> clone() const override {
        return std::make_unique<Session>(*this);
    }

    Bytes first_message() override {
        r_ = rng_.below(params_.l);
        return be_fixed(commit(params_, r_), 8);
    }

    Bytes next_message(uint64_t challenge) override {
        return be_fixed(respond(params_, s_, r_, challenge), 8);
    }

  private:
    Params params_;
    uint64_t s_;
    uint64_t r_ = 0;
    Rng rng_;
};

}  // namespace

std::unique_ptr<pcip::ProverSession> Scheme::prover(const Bytes& witness, const Bytes&,
                                                    Rng rng) const {
    return std::make_unique<Session>(params_, decode_element(witness), std::move(rng));
}

bool Scheme::predicate(const pcip::Transcript& t) const {
    uint64_t y = decode_element(t.instance);
    uint64_t a = decode_element(t.messages[0]);
    uint64_t z = decode_element(t.response);
    return verify_triple(params_, y, a, t.challenges[0], z);
}

std::optional<Bytes> Scheme::simulate_first_message(const Bytes& instance, uint64_t challenge,
                                                    const Bytes& response) const {
    return encode_element(simulate(params_, decode_element(instance), challenge, decode_element(response)));
}

Bytes Scheme::sample_response(const Bytes&, Rng& rng) const {
    return encode_element(rng.below(params_.l));
}

}  // namespace fsq::schnorr
