#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsq/mock_sigma.hpp"
#include "fsq/oracle.hpp"

namespace fsq::attacks {

// Exact Grover success after q iterations when a fraction p1 of a uniform
// search space is marked: sin^2((2q+1) asin(sqrt(p1))).
double grover_success(double p1, size_t q);

// State-vector Grover run (phase oracle + diffusion about uniform) over a
// search space of size n with the given marked set; returns the probability
// of measuring a marked element after q iterations.
double grover_circuit(size_t n, const std::vector<size_t>& marked, size_t q);

// Attack preconditions of the tightness theorem:
// (q^2+1) e^2 (5q)^6 < |C| and 2^gamma/(5q)^3 > 2.
struct Preconditions {
    bool challenge_space_large_enough = false;
    bool entropy_large_enough = false;
    bool ok() const { return challenge_space_large_enough && entropy_large_enough; }
};
Preconditions evaluate_preconditions(size_t q, double challenge_cardinality, unsigned gamma);

// Marked fraction of the simulator randomness for one concrete H: the
// fraction of first messages a with H(frame(x, a)) = phi(a), by full
// enumeration of the 2^gamma first messages (exactly 2^gamma oracle
// queries), plus the resulting Grover success.
struct AttackPoint {
    double p1 = 0.0;
    double p2 = 0.0;
};
AttackPoint fs_attack_analytic(const mock::MockSigma& mock, const rom::RandomOracle& oracle,
                               const Bytes& instance, size_t q);

struct AttackReport {
    size_t q = 0;
    size_t n = 1;
    double challenge_cardinality = 0;
    unsigned gamma = 0;
    size_t samples = 0;
    bool exhaustive = false;
    double mean_p1 = 0.0;
    double mean_p2 = 0.0;
    double std_error_p2 = 0.0;  // sample standard error of mean_p2
    double bound = 0.0;         // q^2/|C| (or the multi-round bound)
    Preconditions preconditions;
    uint64_t seed = 0;
};

struct GroverParams {
    size_t q = 1;
    uint64_t challenge_cardinality = 16;
    unsigned gamma = 4;
    size_t samples = 100;
    uint64_t seed = 0;
    bool exhaustive = false;  // enumerate all |C|^(2^gamma) oracles
};

// E_H[p2] for the single-round attack: Monte-Carlo over sampled H (fresh
// uniform value per (x, a)), or exact full-table enumeration in exhaustive
// mode. Reports mean p2 against the q^2/|C| target.
AttackReport expected_attack_success(const GroverParams& params, const mock::MockSigma& mock);

struct MultiRoundParams {
    size_t n = 2;
    size_t q_total = 16;         // split as q' = q_total / n per round
    uint64_t inner_cardinality = 1024;  // |C^| of the inner Sigma-protocol
    unsigned pad_bits = 0;
    unsigned gamma = 10;
    size_t samples = 50;
    uint64_t seed = 0;
};

struct MultiRoundReport {
    MultiRoundParams params;
    double mean_product = 0.0;  // mean over H of the product of round successes
    double std_error = 0.0;
    double bound = 0.0;  // n^{-2n} q_total^{2n} epsilon, epsilon = |C^|^{-n}
    std::vector<double> mean_round_p1;
};

// Sequential attack on the multi-round Fiat-Shamir transformation: round i
// runs the analytic attack against the chained challenge derivation, using
// the previous round's found challenge in the hash input.
MultiRoundReport multiround_attack(const MultiRoundParams& params);

// Collated loss constants.
enum class LossKind { Single, Multi, Ordered, Mfs, AttackC1, AttackC2 };
LossKind loss_kind_from_string(const std::string& name);

struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};
Rational theoretical_loss(LossKind kind, size_t q, size_t n);

}  // namespace fsq::attacks
