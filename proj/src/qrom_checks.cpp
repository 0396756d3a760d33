#include "fsq/qrom/checks.hpp"

#include <Eigen/QR>

#include "fsq/parallel.hpp"

namespace fsq::qrom {

Mat random_unitary(size_t dim, Rng& rng) {
    Mat g(dim, dim);
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) g(i, j) = Complex{rng.gaussian(), rng.gaussian()};
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is Haar.
    for (size_t j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= a == 0.0 ? Complex{1, 0} : d / a;
    }
    return q;
}

OracleAdversary random_adversary(const RegisterLayout& layout, size_t queries, Rng& rng,
                                 double projection_rate) {
    layout.validate();
    const size_t dim = layout.dim();
    OracleAdversary adv;
    adv.layout = layout;
    for (size_t t = 0; t < queries; ++t) {
        Step step;
        step.unitary = random_unitary(dim, rng);
        if (rng.real() < projection_rate) {
            // Diagonal 0/1 projection determined by a random keep-set on Z.
            Eigen::VectorXd diag(dim);
            std::vector<int> keep(layout.z_size);
            for (auto& k : keep) k = rng.coin() ? 1 : 0;
            const size_t sz = layout.stride_z();
            for (size_t idx = 0; idx < dim; ++idx)
                diag(static_cast<long>(idx)) = keep[(idx / sz) % layout.z_size];
            step.projection = std::move(diag);
        }
        adv.steps.push_back(std::move(step));
    }
    Vec init(dim);
    for (size_t i = 0; i < dim; ++i) init[i] = Complex{rng.gaussian(), rng.gaussian()};
    init.normalize();
    adv.initial = std::move(init);
    adv.validate();
    return adv;
}

Predicate random_predicate(const RegisterLayout& layout, uint64_t seed) {
    uint32_t z_size = layout.z_size;
    return [z_size, seed](const std::vector<uint32_t>& xs, const std::vector<uint32_t>& thetas) {
        Rng rng("qrom-predicate", seed);
        Bytes key;
        for (uint32_t x : xs) append(key, u32_be(x));
        for (uint32_t th : thetas) append(key, u32_be(th));
        Rng derived = rng.child(to_string(key));
        Eigen::VectorXd diag(z_size);
        for (uint32_t z = 0; z < z_size; ++z) diag(z) = derived.coin() ? 1.0 : 0.0;
        return diag;
    };
}

namespace {

struct TrialResult {
    double min_margin = 1e300;
    std::string worst;
    size_t cases = 0;
};

SuiteResult aggregate(const std::vector<TrialResult>& trials) {
    SuiteResult out;
    out.min_margin = 1e300;
    for (const auto& t : trials) {
        out.cases += t.cases;
        if (t.min_margin < out.min_margin) {
            out.min_margin = t.min_margin;
            out.worst_case = t.worst;
        }
    }
    return out;
}

std::vector<uint64_t> table_indices(const SuiteConfig& config, uint32_t domain, Rng& rng) {
    uint64_t total = QTable::count(domain, config.y_size);
    std::vector<uint64_t> indices;
    if (total <= config.enumerate_limit) {
        for (uint64_t i = 0; i < total; ++i) indices.push_back(i);
    } else {
        for (size_t i = 0; i < config.sampled_tables; ++i) indices.push_back(rng.below(total));
    }
    return indices;
}

std::string describe(size_t trial, uint64_t table_index, const std::vector<uint32_t>& xs,
                     const std::vector<uint32_t>& thetas) {
    std::string s = "trial=" + std::to_string(trial) + " H#" + std::to_string(table_index) + " x=(";
    for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    s += ") theta=(";
    for (size_t i = 0; i < thetas.size(); ++i) s += (i ? "," : "") + std::to_string(thetas[i]);
    return s + ")";
}

}  // namespace

SuiteResult lemma1_suite(const SuiteConfig& config) {
    RegisterLayout layout;
    layout.x_size = config.x_size;
    layout.y_size = config.y_size;
    layout.n_outputs = 1;
    layout.z_size = config.y_size;

    auto trials = parallel_map<TrialResult>(config.trials, [&](size_t trial) {
        Rng rng = Rng("lemma1-suite", config.seed).child("trial", trial);
        OracleAdversary adv = random_adversary(layout, config.q, rng);
        Predicate predicate = random_predicate(layout, rng.u64());
        TrialResult result;
        Rng table_rng = rng.child("tables");
        for (uint64_t ti : table_indices(config, layout.x_size, table_rng)) {
            QTable table = QTable::from_index(layout.x_size, layout.y_size, ti);
            for (uint32_t x = 0; x < layout.x_size; ++x) {
                for (uint32_t theta = 0; theta < layout.y_size; ++theta) {
                    BoundCheck check = lemma1_check(adv, table, x, theta, predicate);
                    ++result.cases;
                    if (check.margin < result.min_margin) {
                        result.min_margin = check.margin;
                        result.worst = describe(trial, ti, {x}, {theta});
                    }
                }
            }
        }
        return result;
    });
    return aggregate(trials);
}

SuiteResult theorem1_suite(const SuiteConfig& config) {
    RegisterLayout layout;
    layout.x_size = config.x_size;
    layout.y_size = config.y_size;
    layout.n_outputs = 1;
    layout.z_size = config.y_size;

    auto trials = parallel_map<TrialResult>(config.trials, [&](size_t trial) {
        Rng rng = Rng("theorem1-suite", config.seed).child("trial", trial);
        OracleAdversary adv = random_adversary(layout, config.q, rng);
        Predicate predicate = random_predicate(layout, rng.u64());
        TrialResult result;
        for (uint32_t x = 0; x < layout.x_size; ++x) {
            Theorem1Result check = theorem1_check(adv, x, predicate);
            ++result.cases;
            if (check.margin < result.min_margin) {
                result.min_margin = check.margin;
                result.worst = "trial=" + std::to_string(trial) + " x=" + std::to_string(x);
            }
        }
        return result;
    });
    return aggregate(trials);
}

SuiteResult lemma2_suite(const SuiteConfig& config) {
    RegisterLayout layout;
    layout.x_size = config.x_size;
    layout.y_size = config.y_size;
    layout.n_outputs = 2;
    layout.z_size = config.y_size;

    auto trials = parallel_map<TrialResult>(config.trials, [&](size_t trial) {
        Rng rng = Rng("lemma2-suite", config.seed).child("trial", trial);
        OracleAdversary adv = random_adversary(layout, config.q, rng);
        Predicate predicate = random_predicate(layout, rng.u64());
        TrialResult result;
        Rng table_rng = rng.child("tables");
        for (uint64_t ti : table_indices(config, layout.x_size, table_rng)) {
            QTable table = QTable::from_index(layout.x_size, layout.y_size, ti);
            for (uint32_t x1 = 0; x1 < layout.x_size; ++x1) {
                for (uint32_t x2 = 0; x2 < layout.x_size; ++x2) {
                    if (x1 == x2) continue;
                    for (uint32_t t1 = 0; t1 < layout.y_size; ++t1) {
                        for (uint32_t t2 = 0; t2 < layout.y_size; ++t2) {
                            BoundCheck check =
                                lemma2_check(adv, table, {x1, x2}, {t1, t2}, predicate);
                            ++result.cases;
                            if (check.margin < result.min_margin) {
                                result.min_margin = check.margin;
                                result.worst = describe(trial, ti, {x1, x2}, {t1, t2});
                            }
                        }
                    }
                }
            }
        }
        return result;
    });
    return aggregate(trials);
}

}  // namespace fsq::qrom
