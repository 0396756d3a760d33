#include "fsq/qrom/sim.hpp"

#include <stdexcept>
#include <unordered_set>

namespace fsq::qrom {

QTable::QTable(uint32_t domain_size, uint32_t range_size, std::vector<uint32_t> vals)
    : domain(domain_size), range(range_size), values(std::move(vals)) {
    if (domain == 0 || range == 0 || (range & (range - 1)) != 0)
        throw std::invalid_argument("QTable: range must be a nonzero power of two");
    if (values.size() != domain) throw std::invalid_argument("QTable: value count mismatch");
    for (uint32_t v : values)
        if (v >= range) throw std::invalid_argument("QTable: value out of range");
}

QTable QTable::from_index(uint32_t domain_size, uint32_t range_size, uint64_t idx) {
    std::vector<uint32_t> vals(domain_size);
    for (uint32_t i = 0; i < domain_size; ++i) {
        vals[i] = static_cast<uint32_t>(idx % range_size);
        idx /= range_size;
    }
    return QTable(domain_size, range_size, std::move(vals));
}

uint64_t QTable::count(uint32_t domain_size, uint32_t range_size) {
    uint64_t c = 1;
    for (uint32_t i = 0; i < domain_size; ++i) {
        if (c > UINT64_MAX / range_size) throw std::overflow_error("QTable: table count overflow");
        c *= range_size;
    }
    return c;
}

QTable QTable::reprogram(uint32_t x, uint32_t theta) const {
    if (x >= domain || theta >= range) throw std::invalid_argument("reprogram: point out of range");
    QTable out = *this;
    out.values[x] = theta;
    return out;
}

QTable QTable::reprogram_multi(const std::vector<uint32_t>& xs,
                               const std::vector<uint32_t>& thetas) const {
    if (xs.size() != thetas.size()) throw std::invalid_argument("reprogram_multi: size mismatch");
    std::unordered_set<uint32_t> seen;
    QTable out = *this;
    for (size_t j = 0; j < xs.size(); ++j) {
        if (!seen.insert(xs[j]).second)
            throw std::invalid_argument("reprogram_multi: duplicate entries in x tuple");
        if (xs[j] >= domain || thetas[j] >= range)
            throw std::invalid_argument("reprogram_multi: point out of range");
        out.values[xs[j]] = thetas[j];
    }
    return out;
}

size_t RegisterLayout::dim() const {
    size_t d = 2ull * x_size * y_size * z_size * e_size;
    for (size_t k = 1; k < n_outputs; ++k) d *= x_size;
    return d;
}

void RegisterLayout::validate() const {
    if (x_size < 2 || y_size < 2 || z_size < 1 || e_size < 1 || n_outputs < 1)
        throw std::invalid_argument("RegisterLayout: degenerate register");
    if ((y_size & (y_size - 1)) != 0)
        throw std::invalid_argument("RegisterLayout: |Y| must be a power of two");
    if (dim() > kDimensionCap)
        throw std::invalid_argument("RegisterLayout: dimension " + std::to_string(dim()) +
                                    " exceeds cap " + std::to_string(kDimensionCap));
}

// Index layout, fastest-varying last: control / qin / qy / X2..Xn / Z / E.
size_t RegisterLayout::stride_z() const { return e_size; }
size_t RegisterLayout::stride_output(size_t k) const {
    if (k >= n_outputs) throw std::invalid_argument("RegisterLayout: output slot out of range");
    if (k == 0) return stride_qin();
    size_t s = static_cast<size_t>(z_size) * e_size;
    for (size_t j = n_outputs - 1; j > k; --j) s *= x_size;
    return s;
}
size_t RegisterLayout::stride_qy() const {
    size_t s = static_cast<size_t>(z_size) * e_size;
    for (size_t k = 1; k < n_outputs; ++k) s *= x_size;
    return s;
}
size_t RegisterLayout::stride_qin() const { return stride_qy() * y_size; }
size_t RegisterLayout::stride_control() const { return stride_qin() * x_size; }

void OracleAdversary::validate() const {
    layout.validate();
    if (initial.size() != static_cast<long>(layout.dim()))
        throw std::invalid_argument("OracleAdversary: initial state dimension mismatch");
    double norm = initial.norm();
    if (std::abs(norm - 1.0) > 1e-10)
        throw std::invalid_argument("OracleAdversary: initial state not normalized");
    for (const auto& step : steps) {
        if (step.unitary.rows() != step.unitary.cols() ||
            step.unitary.rows() != static_cast<long>(layout.dim()))
            throw std::invalid_argument("OracleAdversary: step dimension mismatch");
        if (unitarity_defect(step.unitary) > kUnitarityTol)
            throw std::invalid_argument("OracleAdversary: step is not unitary");
        if (step.projection) {
            if (step.projection->size() != static_cast<long>(layout.dim()))
                throw std::invalid_argument("OracleAdversary: projection dimension mismatch");
            for (long j = 0; j < step.projection->size(); ++j) {
                double v = (*step.projection)(j);
                if (v != 0.0 && v != 1.0)
                    throw std::invalid_argument("OracleAdversary: projection diagonal must be 0/1");
            }
        }
    }
}

double unitarity_defect(const Mat& u) {
    Mat g = u.adjoint() * u;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff();
}

void apply_oracle(const RegisterLayout& layout, const QTable& table, Vec& psi) {
    if (table.domain != layout.x_size || table.range != layout.y_size)
        throw std::invalid_argument("apply_oracle: table does not match layout");
    const size_t dim = layout.dim();
    const size_t sc = layout.stride_control();
    const size_t sx = layout.stride_qin();
    const size_t sy = layout.stride_qy();
    Vec out(psi.size());
    for (size_t idx = 0; idx < dim; ++idx) {
        uint32_t c = (idx / sc) % 2;
        if (c == 0) {
            out[idx] = psi[idx];
            continue;
        }
        uint32_t x = (idx / sx) % layout.x_size;
        uint32_t y = (idx / sy) % layout.y_size;
        uint32_t y2 = y ^ table(x);
        size_t idx2 = idx - static_cast<size_t>(y) * sy + static_cast<size_t>(y2) * sy;
        out[idx2] = psi[idx];
    }
    psi = std::move(out);
}

void apply_step(const Step& step, Vec& psi) {
    if (step.projection) psi = step.projection->cast<Complex>().asDiagonal() * psi;
    psi = step.unitary * psi;
}

void project_query_input(const RegisterLayout& layout, uint32_t x, Vec& psi) {
    const size_t sx = layout.stride_qin();
    for (long idx = 0; idx < psi.size(); ++idx)
        if ((static_cast<size_t>(idx) / sx) % layout.x_size != x) psi[idx] = Complex{0, 0};
}

void run_partial(const OracleAdversary& adv, const QTable& table, size_t from, size_t to, Vec& psi) {
    if (to > adv.queries()) throw std::invalid_argument("run_partial: step index out of range");
    for (size_t t = from; t < to; ++t) {
        apply_oracle(adv.layout, table, psi);
        apply_step(adv.steps[t], psi);
    }
}

void apply_outcome_projector(const RegisterLayout& layout, const std::vector<uint32_t>& xs,
                             const Eigen::VectorXd& z_diag, Vec& psi) {
    if (xs.size() != layout.n_outputs)
        throw std::invalid_argument("outcome projector: tuple size mismatch");
    if (z_diag.size() != static_cast<long>(layout.z_size))
        throw std::invalid_argument("outcome projector: Z diagonal size mismatch");
    const size_t sz = layout.stride_z();
    for (long idx = 0; idx < psi.size(); ++idx) {
        size_t u = static_cast<size_t>(idx);
        bool keep = true;
        for (size_t k = 0; k < xs.size() && keep; ++k)
            keep = layout.output_of(u, k) == xs[k];
        if (!keep) {
            psi[idx] = Complex{0, 0};
            continue;
        }
        uint32_t z = (u / sz) % layout.z_size;
        psi[idx] *= z_diag(z);
    }
}

double success_prob(const OracleAdversary& adv, const QTable& table,
                    const std::vector<uint32_t>& xs, const Predicate& predicate) {
    Vec psi = run_adversary(adv, table);
    std::vector<uint32_t> thetas(xs.size());
    for (size_t k = 0; k < xs.size(); ++k) thetas[k] = table(xs[k]);
    apply_outcome_projector(adv.layout, xs, predicate(xs, thetas), psi);
    return psi.squaredNorm();
}

std::vector<SchedulePoint> legal_schedule_points(size_t q) {
    std::vector<SchedulePoint> points;
    for (size_t i = 0; i < q; ++i) {
        points.push_back({i, 0});
        points.push_back({i, 1});
    }
    points.push_back({q, 0});
    return points;
}

namespace {

void check_schedule_point(size_t q, SchedulePoint r) {
    bool ok = (r.i < q && (r.b == 0 || r.b == 1)) || (r.i == q && r.b == 0);
    if (!ok) throw std::invalid_argument("schedule point outside ({0..q-1}x{0,1}) u {(q,0)}");
}

}  // namespace

double single_term(const OracleAdversary& adv, const QTable& table, uint32_t x, uint32_t theta,
                   const Predicate& predicate, SchedulePoint r) {
    return multi_term(adv, table, {x}, {theta}, predicate, {r});
}

std::vector<MeasureOutcome> simulate_single(const OracleAdversary& adv, const QTable& table,
                                            uint32_t theta, SchedulePoint r) {
    const size_t q = adv.queries();
    check_schedule_point(q, r);
    std::vector<MeasureOutcome> outcomes;
    Vec prefix = adv.initial;
    run_partial(adv, table, 0, r.i, prefix);
    for (uint32_t x = 0; x < adv.layout.x_size; ++x) {
        Vec psi = prefix;
        // At i = q the final output register (which is the query register's
        // output slot 0) is measured; otherwise the pending query input.
        project_query_input(adv.layout, x, psi);
        if (r.i < q) {
            QTable reprogrammed = table.reprogram(x, theta);
            if (r.b == 1) {
                apply_oracle(adv.layout, table, psi);
                apply_step(adv.steps[r.i], psi);
                run_partial(adv, reprogrammed, r.i + 1, q, psi);
            } else {
                run_partial(adv, reprogrammed, r.i, q, psi);
            }
        }
        outcomes.push_back({x, psi.squaredNorm(), std::move(psi)});
    }
    return outcomes;
}

BoundCheck lemma1_check(const OracleAdversary& adv, const QTable& table, uint32_t x, uint32_t theta,
                        const Predicate& predicate) {
    const size_t q = adv.queries();
    const auto points = legal_schedule_points(q);
    double lhs = 0.0;
    for (const auto& r : points) lhs += single_term(adv, table, x, theta, predicate, r);
    lhs /= static_cast<double>(points.size());

    Vec target = run_adversary(adv, table.reprogram(x, theta));
    apply_outcome_projector(adv.layout, {x}, predicate({x}, {theta}), target);
    double rhs = target.squaredNorm() / (static_cast<double>(points.size()) * points.size());
    return {lhs, rhs, lhs - rhs};
}

Theorem1Result theorem1_check(const OracleAdversary& adv, uint32_t x, const Predicate& predicate) {
    const uint32_t xs = adv.layout.x_size, ys = adv.layout.y_size;
    const uint64_t tables = QTable::count(xs, ys);
    const auto points = legal_schedule_points(adv.queries());
    double sim = 0.0, advp = 0.0;
    for (uint64_t ti = 0; ti < tables; ++ti) {
        QTable table = QTable::from_index(xs, ys, ti);
        advp += success_prob(adv, table, {x}, predicate);
        for (uint32_t theta = 0; theta < ys; ++theta) {
            double lhs = 0.0;
            for (const auto& r : points) lhs += single_term(adv, table, x, theta, predicate, r);
            sim += lhs / static_cast<double>(points.size());
        }
    }
    sim /= static_cast<double>(tables) * ys;
    advp /= static_cast<double>(tables);
    double factor = static_cast<double>(points.size()) * points.size();
    return {sim, advp, sim - advp / factor};
}

double multi_term(const OracleAdversary& adv, const QTable& table, const std::vector<uint32_t>& xs,
                  const std::vector<uint32_t>& thetas, const Predicate& predicate,
                  const std::vector<SchedulePoint>& r) {
    const size_t q = adv.queries();
    const size_t n = xs.size();
    if (thetas.size() != n || r.size() != n)
        throw std::invalid_argument("multi_term: tuple size mismatch");
    if (n != adv.layout.n_outputs)
        throw std::invalid_argument("multi_term: layout has wrong number of output slots");
    for (size_t j = 0; j < n; ++j) {
        check_schedule_point(q, r[j]);
        if (xs[j] >= adv.layout.x_size || thetas[j] >= adv.layout.y_size)
            throw std::invalid_argument("multi_term: point out of range");
        for (size_t k = j + 1; k < n; ++k)
            if (xs[j] == xs[k]) throw std::invalid_argument("multi_term: duplicate x entries");
    }
    // Two measurements of the same actual query slot project the query
    // register onto distinct values: the term vanishes identically.
    for (size_t j = 0; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k)
            if (r[j].i == r[k].i && r[j].i < q) return 0.0;

    Vec psi = adv.initial;
    for (size_t t = 1; t <= q; ++t) {
        for (size_t k = 0; k < n; ++k)
            if (r[k].i == t - 1) project_query_input(adv.layout, xs[k], psi);
        QTable slot_table = table;
        for (size_t k = 0; k < n; ++k)
            if (t >= r[k].i + static_cast<size_t>(r[k].b) + 1)
                slot_table.values[xs[k]] = thetas[k];
        apply_oracle(adv.layout, slot_table, psi);
        apply_step(adv.steps[t - 1], psi);
    }
    // Coordinates with i = q measure their own output register, which the
    // outcome projector applies anyway.
    apply_outcome_projector(adv.layout, xs, predicate(xs, thetas), psi);
    return psi.squaredNorm();
}

BoundCheck lemma2_check(const OracleAdversary& adv, const QTable& table,
                        const std::vector<uint32_t>& xs, const std::vector<uint32_t>& thetas,
                        const Predicate& predicate) {
    const size_t n = xs.size();
    const auto points = legal_schedule_points(adv.queries());
    double sum = 0.0;
    uint64_t total = 1;
    for (size_t j = 0; j < n; ++j) total *= points.size();
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t rest = idx;
        std::vector<SchedulePoint> r(n);
        bool skip = false;
        for (size_t j = 0; j < n; ++j) {
            r[j] = points[rest % points.size()];
            rest /= points.size();
        }
        for (size_t j = 0; j < n && !skip; ++j)
            for (size_t k = j + 1; k < n && !skip; ++k)
                if (r[j].i == r[k].i && r[j].i < adv.queries()) skip = true;
        if (skip) continue;  // identically zero
        sum += multi_term(adv, table, xs, thetas, predicate, r);
    }
    double lhs = sum / static_cast<double>(total);

    Vec target = run_adversary(adv, table.reprogram_multi(xs, thetas));
    apply_outcome_projector(adv.layout, xs, predicate(xs, thetas), target);
    double denom = 1.0;
    for (size_t j = 0; j < 2 * n; ++j) denom *= static_cast<double>(points.size());
    double rhs = target.squaredNorm() / denom;
    return {lhs, rhs, lhs - rhs};
}

}  // namespace fsq::qrom
