#pragma once

#include <string>

#include "fsq/qrom/sim.hpp"

namespace fsq::qrom {

// Haar-distributed unitary via QR of a complex Gaussian matrix.
Mat random_unitary(size_t dim, Rng& rng);

// Random adversary: Haar unitary steps, each prefixed with probability
// `projection_rate` by a random diagonal 0/1 projection acting on Z, and a
// random normalized initial state.
OracleAdversary random_adversary(const RegisterLayout& layout, size_t queries, Rng& rng,
                                 double projection_rate = 0.3);

// Predicate family: per-(xs, thetas) random diagonal 0/1 projection on Z,
// derived deterministically from the seed.
Predicate random_predicate(const RegisterLayout& layout, uint64_t seed);

struct SuiteConfig {
    size_t q = 1;
    uint32_t x_size = 2;
    uint32_t y_size = 2;
    size_t trials = 10;           // number of random adversaries
    uint64_t seed = 0;
    uint64_t enumerate_limit = 256;  // enumerate all H when |Y|^|X| fits
    size_t sampled_tables = 16;      // tables per adversary otherwise
};

struct SuiteResult {
    size_t cases = 0;        // (adversary, H, x, Theta) combinations checked
    double min_margin = 0.0;
    std::string worst_case;  // description of the minimizing combination
};

// Lemma "single input" over random adversaries with exhaustive or sampled
// (H, x, Theta). Parallel over adversaries, aggregation order fixed.
SuiteResult lemma1_suite(const SuiteConfig& config);

// Theorem "single input" with exhaustive (H, Theta) enumeration per x.
SuiteResult theorem1_suite(const SuiteConfig& config);

// Lemma "multi input" at n = 2 with exhaustive schedule enumeration.
SuiteResult lemma2_suite(const SuiteConfig& config);

}  // namespace fsq::qrom
