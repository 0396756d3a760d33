#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fsq/xof.hpp"

namespace fsq::qrom {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr size_t kDimensionCap = 4096;
inline constexpr double kUnitarityTol = 1e-9;

// Oracle function table H: [0, domain) -> [0, range), range a power of two.
struct QTable {
    uint32_t domain = 0;
    uint32_t range = 0;
    std::vector<uint32_t> values;

    QTable(uint32_t domain_size, uint32_t range_size, std::vector<uint32_t> vals);

    // Table with index `idx` in the mixed-radix enumeration of all
    // range^domain tables.
    static QTable from_index(uint32_t domain_size, uint32_t range_size, uint64_t idx);
    static uint64_t count(uint32_t domain_size, uint32_t range_size);

    uint32_t operator()(uint32_t x) const { return values[x]; }

    // H*Theta x: coincides with H away from x.
    QTable reprogram(uint32_t x, uint32_t theta) const;
    // Multi-point reprogramming; rejects duplicate points.
    QTable reprogram_multi(const std::vector<uint32_t>& xs, const std::vector<uint32_t>& thetas) const;

    bool operator==(const QTable& other) const = default;
};

// Register order: control(2) | X1 = query input (|X|) | query output (|Y|) |
// X2..Xn (|X| each) | Z (z_dim) | E (e_dim). The first output slot doubles
// as the query input register; extra output slots hold the rest of the
// extracted tuple.
struct RegisterLayout {
    uint32_t x_size = 2;
    uint32_t y_size = 2;  // power of two (XOR structure)
    size_t n_outputs = 1;
    uint32_t z_size = 2;
    uint32_t e_size = 1;

    size_t dim() const;
    void validate() const;

    // Strides in the flattened index.
    size_t stride_control() const;
    size_t stride_qin() const;
    size_t stride_qy() const;
    size_t stride_output(size_t k) const;  // k in [0, n_outputs), 0 = qin
    size_t stride_z() const;

    uint32_t qin_of(size_t idx) const { return (idx / stride_qin()) % x_size; }
    uint32_t control_of(size_t idx) const { return (idx / stride_control()) % 2; }
    uint32_t qy_of(size_t idx) const { return (idx / stride_qy()) % y_size; }
    uint32_t output_of(size_t idx, size_t k) const { return (idx / stride_output(k)) % x_size; }
    uint32_t z_of(size_t idx) const { return (idx / stride_z()) % z_size; }
};

// One adversary step: an optional projection (diagonal 0/1 over the full
// space, covering computational-basis projectors) followed by a unitary.
struct Step {
    std::optional<Eigen::VectorXd> projection;
    Mat unitary;
};

// Quantum predicate: family of diagonal 0/1 projections on Z indexed by the
// output tuple and the Theta tuple.
using Predicate = std::function<Eigen::VectorXd(const std::vector<uint32_t>& xs,
                                                const std::vector<uint32_t>& thetas)>;

struct OracleAdversary {
    RegisterLayout layout;
    std::vector<Step> steps;  // A_1..A_q
    Vec initial;              // |phi_0>

    size_t queries() const { return steps.size(); }
    void validate() const;  // unitarity / projector / norm invariants
};

// O^H |c>|x>|y>|..> = |c>|x>|y xor c*H(x)>|..>, an exact basis permutation.
void apply_oracle(const RegisterLayout& layout, const QTable& table, Vec& psi);
void apply_step(const Step& step, Vec& psi);

// Zero out amplitudes whose query-input register differs from x.
void project_query_input(const RegisterLayout& layout, uint32_t x, Vec& psi);

// A_{from->to}^H applied to psi (steps from+1..to), identity if to <= from.
void run_partial(const OracleAdversary& adv, const QTable& table, size_t from, size_t to, Vec& psi);

inline Vec run_adversary(const OracleAdversary& adv, const QTable& table) {
    Vec psi = adv.initial;
    run_partial(adv, table, 0, adv.queries(), psi);
    return psi;
}

// G projector |x><x| (x) Pi applied in place: keeps amplitudes whose output
// registers hold xs and scales by the Z-diagonal of the predicate.
void apply_outcome_projector(const RegisterLayout& layout, const std::vector<uint32_t>& xs,
                             const Eigen::VectorXd& z_diag, Vec& psi);

double success_prob(const OracleAdversary& adv, const QTable& table,
                    const std::vector<uint32_t>& xs, const Predicate& predicate);

// Measure-and-reprogram schedule entry: (i, b) with
// (i, b) in ({0..q-1} x {0,1}) u {(q, 0)}.
struct SchedulePoint {
    size_t i = 0;
    int b = 0;
};

std::vector<SchedulePoint> legal_schedule_points(size_t q);

// ||G_x^Theta (A_{i+b->q}^{H*Theta x}) (A_{i->i+b}^H) X |phi_i^H>||^2 for one
// schedule point, with the final-output convention at i = q.
double single_term(const OracleAdversary& adv, const QTable& table, uint32_t x, uint32_t theta,
                   const Predicate& predicate, SchedulePoint r);

// Exhaustive single-input simulator at a fixed schedule point: outcome
// probability and conditional (projected, unnormalized) final state per
// measured x.
struct MeasureOutcome {
    uint32_t x = 0;
    double probability = 0.0;
    Vec state;
};
std::vector<MeasureOutcome> simulate_single(const OracleAdversary& adv, const QTable& table,
                                            uint32_t theta, SchedulePoint r);

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // lhs - rhs
};

// Lemma "single input": E_{i,b}[term] >= target / (2q+1)^2 for fixed
// (H, x, Theta, Pi).
BoundCheck lemma1_check(const OracleAdversary& adv, const QTable& table, uint32_t x, uint32_t theta,
                        const Predicate& predicate);

// Theorem "measure-and-reprogram, single input", fully enumerated over
// (H, Theta): returns (simulator success, adversary success); the bound is
// sim >= adv / (2q+1)^2.
struct Theorem1Result {
    double sim_prob = 0.0;
    double adv_prob = 0.0;
    double margin = 0.0;
};
Theorem1Result theorem1_check(const OracleAdversary& adv, uint32_t x, const Predicate& predicate);

// Multi-input simulator term for schedule r = (r_1..r_n): the nested
// composition of the single-input simulator. Duplicate output points are
// rejected; schedules measuring two actual queries at the same slot are
// identically zero and are reported as such.
double multi_term(const OracleAdversary& adv, const QTable& table, const std::vector<uint32_t>& xs,
                  const std::vector<uint32_t>& thetas, const Predicate& predicate,
                  const std::vector<SchedulePoint>& r);

// Lemma "multi input": E_r[term] >= target / (2q+1)^{2n}, expectation over
// the full schedule product set; colliding actual-query slots contribute 0
// and are skipped.
BoundCheck lemma2_check(const OracleAdversary& adv, const QTable& table,
                        const std::vector<uint32_t>& xs, const std::vector<uint32_t>& thetas,
                        const Predicate& predicate);

// max |(U^dagger U - I)_{jk}|
double unitarity_defect(const Mat& u);

}  // namespace fsq::qrom
