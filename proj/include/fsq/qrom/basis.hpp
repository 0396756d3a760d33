#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsq/qrom/sim.hpp"

namespace fsq::qrom::basis {

// Classical (basis-state) adversaries over the chain-shaped oracle domain
// (X0 u Y) x X, with exact probabilities computed symbolically: oracle
// answers and reprogramming targets are treated as fresh uniform symbols
// and every branch condition is an (in)equality between symbols and
// constants, so leaf probabilities come out of a union-find count plus
// inclusion-exclusion, with no Monte-Carlo error.

// A value in X0 (tag 0), a concrete value in Y (tag 1), or a Y-valued
// symbol (tag 2).
struct Term {
    enum Kind : uint8_t { X0Const, YConst, Sym } kind = YConst;
    uint64_t value = 0;

    static Term x0(uint64_t v) { return {X0Const, v}; }
    static Term y(uint64_t v) { return {YConst, v}; }
    static Term sym(uint64_t id) { return {Sym, id}; }

    bool operator==(const Term&) const = default;
};

// Expression for a query's first coordinate: an X0 label, a Y constant, or
// the answer of an earlier query.
struct FirstExpr {
    enum Kind : uint8_t { X0Label, YValue, Answer } kind = X0Label;
    uint64_t value = 0;  // label / value / query index

    static FirstExpr x0(uint64_t v) { return {X0Label, v}; }
    static FirstExpr y(uint64_t v) { return {YValue, v}; }
    static FirstExpr answer(size_t index) { return {Answer, index}; }
};

struct QueryExpr {
    FirstExpr first;
    uint64_t second = 0;  // element of X
};

// Straight-line classical adversary for the hash-chain predicate: makes the
// listed queries, outputs the tuple (x0, x_1..x_n) and claims z = the chain
// values. Accepted iff the claimed values equal the true chain of
// (x0, x_1..x_n) under H.
struct ChainProgram {
    uint64_t y_size = 16;
    uint64_t x0 = 0;
    std::vector<uint64_t> xs;         // x_1..x_n
    std::vector<QueryExpr> queries;   // the q oracle queries
    std::vector<FirstExpr> claimed;   // claimed chain values, length n

    size_t n() const { return xs.size(); }
    size_t q() const { return queries.size(); }
};

// Exact Pr_H[ A outputs an accepted chain tuple ].
double chain_success_probability(const ChainProgram& program);

// Increasing schedules (i_1 < ... < i_n) over the (q+n)-query extension.
std::vector<std::vector<SchedulePoint>> increasing_schedules(size_t extended_q, size_t n);

struct OrderedCheck {
    double p_adversary = 0.0;  // P_A
    double p_simulator = 0.0;  // P_S under the order-enforcing simulator
    double deficit = 0.0;      // max(0, n! P_A / (q+n+1)^{2n} - P_S)
    double slack_bound = 0.0;  // n! / |Y|
};

// Order-enforcing simulator check for one classical adversary: extends the
// program by the n chain queries, averages the exact simulator success over
// all increasing schedules and uniform Theta, and compares against
// n! P_A / (q+n+1)^{2n} with the aggregate slack n!/|Y|.
OrderedCheck theorem5_check(const ChainProgram& program);

// Concrete single run of the ordered simulator: a concrete H, a concrete
// Theta tuple, one schedule. Reports whether all measurements matched the
// produced tuple, the extracted tuple, and whether the reprogrammed
// predicate accepted.
struct OrderedRun {
    bool survived = false;
    std::vector<uint64_t> extracted_x;  // x0, x_1..x_n when survived
    bool accepted = false;
};

// H as a function (first_is_y, first, second) -> Y value.
using HashFn = std::function<uint64_t(bool, uint64_t, uint64_t)>;

OrderedRun ordered_simulate(const ChainProgram& program, const std::vector<SchedulePoint>& schedule,
                            const std::vector<uint64_t>& thetas, const HashFn& hash);
// Convenience wrapper with a seeded lazy H.
OrderedRun ordered_simulate_seeded(const ChainProgram& program,
                                   const std::vector<SchedulePoint>& schedule,
                                   const std::vector<uint64_t>& thetas, uint64_t oracle_seed);

// Seeded corpus member for the ordered-simulator suite: chain followers,
// guessers, and out-of-order provers in fixed proportion.
ChainProgram corpus_program(uint64_t y_size, size_t n, size_t q, uint64_t seed);

}  // namespace fsq::qrom::basis
