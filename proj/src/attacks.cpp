#include "fsq/attacks.hpp"

#include <cmath>
#include <stdexcept>

#include "fsq/fs.hpp"
#include "fsq/parallel.hpp"
#include "fsq/qrom/sim.hpp"

namespace fsq::attacks {

double grover_success(double p1, size_t q) {
    if (p1 < 0.0 || p1 > 1.0) throw std::invalid_argument("grover_success: p1 outside [0,1]");
    double theta = std::asin(std::sqrt(p1));
    double s = std::sin(static_cast<double>(2 * q + 1) * theta);
    return s * s;
}

double grover_circuit(size_t n, const std::vector<size_t>& marked, size_t q) {
    if (n == 0 || n > qrom::kDimensionCap)
        throw std::invalid_argument("grover_circuit: dimension outside simulator cap");
    std::vector<bool> is_marked(n, false);
    for (size_t m : marked) {
        if (m >= n) throw std::invalid_argument("grover_circuit: marked element out of range");
        is_marked[m] = true;
    }
    qrom::Vec psi = qrom::Vec::Constant(static_cast<long>(n), 1, qrom::Complex{1.0 / std::sqrt(n), 0});
    // Diffusion about the uniform state: 2|u><u| - I.
    qrom::Mat diffusion =
        qrom::Mat::Constant(static_cast<long>(n), static_cast<long>(n), qrom::Complex{2.0 / n, 0});
    diffusion -= qrom::Mat::Identity(static_cast<long>(n), static_cast<long>(n));
    if (qrom::unitarity_defect(diffusion) > qrom::kUnitarityTol)
        throw std::logic_error("grover_circuit: diffusion operator not unitary");
    for (size_t it = 0; it < q; ++it) {
        for (size_t j = 0; j < n; ++j)
            if (is_marked[j]) psi[static_cast<long>(j)] = -psi[static_cast<long>(j)];
        psi = diffusion * psi;
    }
    double p = 0.0;
    for (size_t j = 0; j < n; ++j)
        if (is_marked[j]) p += std::norm(psi[static_cast<long>(j)]);
    return p;
}

Preconditions evaluate_preconditions(size_t q, double challenge_cardinality, unsigned gamma) {
    Preconditions pre;
    double qd = static_cast<double>(q);
    double five_q = 5.0 * qd;
    pre.challenge_space_large_enough =
        (qd * qd + 1.0) * std::exp(2.0) * std::pow(five_q, 6.0) < challenge_cardinality;
    pre.entropy_large_enough = std::pow(2.0, static_cast<double>(gamma)) / std::pow(five_q, 3.0) > 2.0;
    return pre;
}

namespace {

Bytes marked_point_input(const mock::MockSigma& mock, const pcip::ChallengeSpace& space,
                         size_t round, const Bytes& instance, uint64_t prev_challenge,
                         uint64_t a_value) {
    // The oracle input the Fiat-Shamir verifier would hash for this round's
    // challenge, with the candidate first message in the message slot.
    return fs::challenge_input(space, round, instance, prev_challenge,
                               mock.encode_first_message(a_value));
}

}  // namespace

AttackPoint fs_attack_analytic(const mock::MockSigma& mock, const rom::RandomOracle& oracle,
                               const Bytes& instance, size_t q) {
    const uint64_t total = mock.first_message_count();
    uint64_t hits = 0;
    for (uint64_t a = 0; a < total; ++a) {
        Bytes input = marked_point_input(mock, oracle.space(), 1, instance, 0, a);
        if (oracle.query(input) == mock.phi(mock.encode_first_message(a))) ++hits;
    }
    AttackPoint point;
    point.p1 = static_cast<double>(hits) / static_cast<double>(total);
    point.p2 = grover_success(point.p1, q);
    return point;
}

AttackReport expected_attack_success(const GroverParams& params, const mock::MockSigma& mock) {
    if (mock.challenge_space().cardinality != params.challenge_cardinality ||
        mock.gamma() != params.gamma)
        throw std::invalid_argument("expected_attack_success: mock does not match parameters");
    pcip::ChallengeSpace space(params.challenge_cardinality);
    Bytes instance = to_bytes("mock-instance");

    AttackReport report;
    report.q = params.q;
    report.challenge_cardinality = static_cast<double>(params.challenge_cardinality);
    report.gamma = params.gamma;
    report.exhaustive = params.exhaustive;
    report.bound = static_cast<double>(params.q) * static_cast<double>(params.q) /
                   static_cast<double>(params.challenge_cardinality);
    report.preconditions =
        evaluate_preconditions(params.q, report.challenge_cardinality, params.gamma);
    report.seed = params.seed;

    std::vector<AttackPoint> points;
    std::vector<double> weights;
    if (params.exhaustive) {
        // All |C|^(2^gamma) tables over the queried points, exact average.
        std::vector<Bytes> domain;
        for (uint64_t a = 0; a < mock.first_message_count(); ++a)
            domain.push_back(marked_point_input(mock, space, 1, instance, 0, a));
        uint64_t tables = rom::OracleTable::table_count(space.cardinality, domain.size());
        if (tables > (uint64_t{1} << 24))
            throw std::invalid_argument("expected_attack_success: exhaustive mode too large");
        for (uint64_t ti = 0; ti < tables; ++ti) {
            rom::OracleTable table = rom::OracleTable::from_index(space, domain, ti);
            points.push_back(fs_attack_analytic(mock, table, instance, params.q));
        }
        report.samples = static_cast<size_t>(tables);
    } else {
        auto sampled = parallel_map<AttackPoint>(params.samples, [&](size_t s) {
            rom::LazyOracle oracle(space, "attack-H", Rng("attack-sample", params.seed).child("s", s).u64());
            return fs_attack_analytic(mock, oracle, instance, params.q);
        });
        points = std::move(sampled);
        report.samples = params.samples;
    }

    double sum1 = 0.0, sum2 = 0.0, sum2sq = 0.0;
    for (const auto& pt : points) {
        sum1 += pt.p1;
        sum2 += pt.p2;
        sum2sq += pt.p2 * pt.p2;
    }
    double count = static_cast<double>(points.size());
    report.mean_p1 = sum1 / count;
    report.mean_p2 = sum2 / count;
    if (points.size() > 1) {
        double var = (sum2sq - sum2 * sum2 / count) / (count - 1.0);
        report.std_error_p2 = std::sqrt(std::max(0.0, var) / count);
    }
    return report;
}

MultiRoundReport multiround_attack(const MultiRoundParams& params) {
    if (params.n == 0 || params.q_total % params.n != 0)
        throw std::invalid_argument("multiround_attack: q_total must be divisible by n");
    const size_t q_round = params.q_total / params.n;
    pcip::ChallengeSpace space(params.inner_cardinality << params.pad_bits);
    mock::MockSigma mock(params.gamma, params.inner_cardinality, params.seed);
    Bytes instance = to_bytes("mock-instance");

    MultiRoundReport report;
    report.params = params;
    report.mean_round_p1.assign(params.n, 0.0);

    struct SampleOut {
        double product = 1.0;
        std::vector<double> p1;
    };
    auto samples = parallel_map<SampleOut>(params.samples, [&](size_t s) {
        Rng sample_rng = Rng("mr-attack", params.seed).child("sample", s);
        rom::LazyOracle oracle(space, "mr-attack-H", sample_rng.u64());
        SampleOut out;
        out.p1.assign(params.n, 0.0);
        uint64_t prev_challenge = 0;
        for (size_t round = 1; round <= params.n; ++round) {
            uint64_t hits = 0;
            std::vector<uint64_t> marked;
            for (uint64_t a = 0; a < mock.first_message_count(); ++a) {
                Bytes input = fs::challenge_input(space, round, instance, prev_challenge,
                                                  mock.encode_first_message(a));
                uint64_t c_full = oracle.query(input);
                if ((c_full >> params.pad_bits) == mock.phi(mock.encode_first_message(a))) {
                    ++hits;
                    marked.push_back(a);
                }
            }
            double p1 = static_cast<double>(hits) / static_cast<double>(mock.first_message_count());
            out.p1[round - 1] = p1;
            out.product *= grover_success(p1, q_round);
            if (marked.empty()) {
                // Round failed; the product is already zero. Continue the
                // chain from an arbitrary message for reporting purposes.
                prev_challenge = oracle.query(fs::challenge_input(
                    space, round, instance, prev_challenge, mock.encode_first_message(0)));
            } else {
                uint64_t found = marked[sample_rng.below(marked.size())];
                prev_challenge = oracle.query(fs::challenge_input(
                    space, round, instance, prev_challenge, mock.encode_first_message(found)));
            }
        }
        return out;
    });

    double sum = 0.0, sumsq = 0.0;
    for (const auto& s : samples) {
        sum += s.product;
        sumsq += s.product * s.product;
        for (size_t j = 0; j < params.n; ++j) report.mean_round_p1[j] += s.p1[j];
    }
    double count = static_cast<double>(samples.size());
    report.mean_product = sum / count;
    if (samples.size() > 1) {
        double var = (sumsq - sum * sum / count) / (count - 1.0);
        report.std_error = std::sqrt(std::max(0.0, var) / count);
    }
    for (auto& v : report.mean_round_p1) v /= count;

    double epsilon = std::pow(static_cast<double>(params.inner_cardinality),
                              -static_cast<double>(params.n));
    report.bound = std::pow(static_cast<double>(params.n), -2.0 * params.n) *
                   std::pow(static_cast<double>(params.q_total), 2.0 * params.n) * epsilon;
    return report;
}

LossKind loss_kind_from_string(const std::string& name) {
    if (name == "single") return LossKind::Single;
    if (name == "multi") return LossKind::Multi;
    if (name == "ordered") return LossKind::Ordered;
    if (name == "mfs") return LossKind::Mfs;
    if (name == "attack_c1") return LossKind::AttackC1;
    if (name == "attack_c2") return LossKind::AttackC2;
    throw std::invalid_argument("unknown loss kind: " + name);
}

namespace {

long long checked_pow(long long base, size_t exp) {
    long long result = 1;
    for (size_t i = 0; i < exp; ++i) {
        if (result > (1ll << 62) / (base == 0 ? 1 : base))
            throw std::overflow_error("theoretical_loss: constant overflows");
        result *= base;
    }
    return result;
}

long long factorial(size_t n) {
    long long f = 1;
    for (size_t i = 2; i <= n; ++i) f *= static_cast<long long>(i);
    return f;
}

}  // namespace

Rational theoretical_loss(LossKind kind, size_t q, size_t n) {
    if (n == 0) throw std::invalid_argument("theoretical_loss: n must be positive");
    long long qll = static_cast<long long>(q);
    long long nll = static_cast<long long>(n);
    switch (kind) {
        case LossKind::Single:
            return {1, checked_pow(2 * qll + 1, 2)};
        case LossKind::Multi:
            return {1, checked_pow(2 * qll + 1, 2 * n)};
        case LossKind::Ordered:
            return {factorial(n), checked_pow(qll + nll + 1, 2 * n)};
        case LossKind::Mfs:
            return {factorial(n), checked_pow(2 * qll + nll + 1, 2 * n)};
        case LossKind::AttackC1:
            return {1, checked_pow(nll, 2 * n)};
        case LossKind::AttackC2:
            return {2 * checked_pow(nll + 3, 2 * n), 1};
    }
    throw std::logic_error("theoretical_loss: unreachable");
}

}  // namespace fsq::attacks
