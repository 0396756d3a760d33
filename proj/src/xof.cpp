#include "fsq/xof.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <stdexcept>

namespace fsq {

namespace {

struct CtxHolder {
    EVP_MD_CTX* ctx;
    CtxHolder() : ctx(EVP_MD_CTX_new()) {}
    ~CtxHolder() { EVP_MD_CTX_free(ctx); }
};

}  // namespace

Bytes shake256(const Bytes& input, size_t out_len) {
    thread_local CtxHolder holder;
    Bytes out(out_len);
    if (EVP_DigestInit_ex(holder.ctx, EVP_shake256(), nullptr) != 1 ||
        EVP_DigestUpdate(holder.ctx, input.data(), input.size()) != 1 ||
        EVP_DigestFinalXOF(holder.ctx, out.data(), out.size()) != 1)
        throw std::runtime_error("shake256: EVP failure");
    return out;
}

void XofStream::refill() {
    // OpenSSL's XOF is one-shot, so extend by recomputing at double length
    // and keeping the fresh tail. Inputs are short; this triggers rarely.
    size_t target = produced_ == 0 ? 136 : produced_ * 2;
    Bytes full = shake256(input_, target);
    buf_.assign(full.begin() + static_cast<long>(produced_), full.end());
    pos_ = 0;
    produced_ = target;
}

uint8_t XofStream::next_byte() {
    if (pos_ >= buf_.size()) refill();
    return buf_[pos_++];
}

Bytes XofStream::next_bytes(size_t n) {
    Bytes out(n);
    for (size_t i = 0; i < n; ++i) out[i] = next_byte();
    return out;
}

uint64_t XofStream::next_u64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | next_byte();
    return v;
}

uint64_t XofStream::uniform_below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
    if (bound == 1) return 0;
    size_t width = challenge_width(bound);
    while (true) {
        uint64_t v = 0;
        for (size_t i = 0; i < width; ++i) v = (v << 8) | next_byte();
        if (v < bound) return v;
    }
}

double XofStream::uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    double u1 = 0.0;
    while (u1 == 0.0) u1 = real();
    double u2 = real();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace fsq
