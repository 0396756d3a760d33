#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fsq/attacks.hpp"
#include "fsq/fs.hpp"
#include "fsq/mq.hpp"
#include "fsq/or_proof.hpp"
#include "fsq/q2.hpp"
#include "fsq/qrom/basis.hpp"
#include "fsq/qrom/checks.hpp"
#include "fsq/schnorr.hpp"
#include "fsq/seqrep.hpp"
#include "fsq/signature.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace fsq;

namespace {

constexpr const char* kVersion = "fsq 1.0.0";
constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    return Bytes(s.begin(), s.end());
}

void write_file(const std::string& path, const Bytes& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<long>(data.size()));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

// ---- scheme construction ---------------------------------------------------

struct SchemeConfig {
    std::string scheme = "schnorr-seq";
    uint64_t p = 23, l = 11, g = 2;
    unsigned bits = 0;  // nonzero: generate parameters
    uint64_t param_seed = 1;
    size_t reps = 2;
    unsigned pad_bits = 0;
    unsigned field = 7;
    size_t nv = 5, m = 5;
    uint64_t mq_seed = 1;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--scheme", scheme, "schnorr | schnorr-seq | mq")
            ->check(CLI::IsMember({"schnorr", "schnorr-seq", "mq"}));
        cmd->add_option("--p", p, "Schnorr prime modulus");
        cmd->add_option("--l", l, "Schnorr subgroup order");
        cmd->add_option("--g", g, "Schnorr generator");
        cmd->add_option("--bits", bits, "generate a safe-prime group of this size");
        cmd->add_option("--param-seed", param_seed, "seed for parameter generation");
        cmd->add_option("--reps", reps, "sequential repetitions");
        cmd->add_option("--pad-bits", pad_bits, "challenge enlargement bits");
        cmd->add_option("--field", field, "MQ field size (prime)");
        cmd->add_option("--nv", nv, "MQ variable count");
        cmd->add_option("--m", m, "MQ equation count");
        cmd->add_option("--mq-seed", mq_seed, "seed of the MQ system");
    }

    json to_params_json() const {
        if (scheme == "mq")
            return json{{"field", field}, {"nv", nv}, {"m", m}, {"mq_seed", mq_seed}};
        json j{{"p", p}, {"l", l}, {"g", g}};
        if (scheme == "schnorr-seq") {
            j["reps"] = reps;
            j["pad_bits"] = pad_bits;
        }
        return j;
    }

    static SchemeConfig from_json(const std::string& scheme, const json& params) {
        SchemeConfig cfg;
        cfg.scheme = scheme;
        if (scheme == "mq") {
            cfg.field = params.at("field").get<unsigned>();
            cfg.nv = params.at("nv").get<size_t>();
            cfg.m = params.at("m").get<size_t>();
            cfg.mq_seed = params.at("mq_seed").get<uint64_t>();
        } else {
            cfg.p = params.at("p").get<uint64_t>();
            cfg.l = params.at("l").get<uint64_t>();
            cfg.g = params.at("g").get<uint64_t>();
            if (scheme == "schnorr-seq") {
                cfg.reps = params.at("reps").get<size_t>();
                cfg.pad_bits = params.at("pad_bits").get<unsigned>();
            }
        }
        return cfg;
    }

    std::shared_ptr<const pcip::Scheme> build() {
        if (bits != 0) {
            auto generated = schnorr::Params::generate(bits, param_seed);
            p = generated.p;
            l = generated.l;
            g = generated.g;
            bits = 0;
        }
        if (scheme == "schnorr") return std::make_shared<schnorr::Scheme>(schnorr::Params{p, l, g});
        if (scheme == "schnorr-seq")
            return pcip::sequential_repeat(std::make_shared<schnorr::Scheme>(schnorr::Params{p, l, g}),
                                           reps, pad_bits);
        if (scheme == "mq")
            return std::make_shared<mq::Scheme>(
                mq::MqParams::generate(static_cast<uint8_t>(field), nv, m, mq_seed));
        throw UsageError("unknown scheme " + scheme);
    }
};

struct LoadedKey {
    SchemeConfig config;
    std::shared_ptr<const pcip::Scheme> scheme;
    Bytes public_key;
    Bytes secret_key;  // may be empty
};

LoadedKey load_key(const std::string& path) {
    json j;
    try {
        j = json::parse(to_string(read_file(path)));
    } catch (const json::exception& e) {
        throw UsageError("key file " + path + ": " + e.what());
    }
    LoadedKey key;
    key.config = SchemeConfig::from_json(j.at("scheme").get<std::string>(), j.at("params"));
    key.scheme = key.config.build();
    key.public_key = hex_decode(j.at("pk_hex").get<std::string>());
    if (j.contains("sk_hex")) key.secret_key = hex_decode(j.at("sk_hex").get<std::string>());
    return key;
}

rom::XofOracle oracle_for(const pcip::Scheme& scheme) {
    return rom::XofOracle(scheme.challenge_space());
}

Bytes message_arg(const std::string& message, const std::string& message_file) {
    if (!message_file.empty()) return read_file(message_file);
    return to_bytes(message);
}

// ---- reports ---------------------------------------------------------------

struct ReportWriter {
    json body;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit ReportWriter(const std::string& experiment) {
        body["version"] = kVersion;
        body["experiment"] = experiment;
    }

    void finish(const std::string& out_path, bool pass) {
        body["pass"] = pass;
        body["wall_clock_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                .count();
        std::string text = body.dump(2) + "\n";
        if (out_path.empty())
            std::cout << text;
        else
            write_text(out_path, text);
    }
};

std::vector<size_t> parse_list(const std::string& csv) {
    std::vector<size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    if (out.empty()) throw UsageError("empty list argument");
    return out;
}

// ---- experiment runners ------------------------------------------------------

int run_lemma1(size_t q, uint32_t x_size, uint32_t y_size, size_t trials, uint64_t seed,
               const std::string& out) {
    qrom::SuiteConfig config{q, x_size, y_size, trials, seed};
    auto result = qrom::lemma1_suite(config);
    bool pass = result.min_margin >= -1e-9;
    ReportWriter report("lemma1");
    report.body["lemma"] = "single-input measure-and-reprogram";
    report.body["q"] = q;
    report.body["n"] = 1;
    report.body["dims"] = {{"X", x_size}, {"Y", y_size}};
    report.body["trials"] = trials;
    report.body["cases"] = result.cases;
    report.body["min_margin"] = result.min_margin;
    report.body["worst_case"] = result.worst_case;
    report.body["seed"] = seed;
    report.finish(out, pass);
    return pass ? kExitAccept : kExitReject;
}

int run_theorem1(size_t q, size_t trials, uint64_t seed, const std::string& out) {
    qrom::SuiteConfig config{q, 2, 2, trials, seed};
    auto result = qrom::theorem1_suite(config);
    bool pass = result.min_margin >= -1e-12;
    ReportWriter report("theorem1");
    report.body["lemma"] = "measure-and-reprogram, single input (exact enumeration)";
    report.body["q"] = q;
    report.body["n"] = 1;
    report.body["dims"] = {{"X", 2}, {"Y", 2}};
    report.body["trials"] = trials;
    report.body["cases"] = result.cases;
    report.body["min_margin"] = result.min_margin;
    report.body["worst_case"] = result.worst_case;
    report.body["seed"] = seed;
    report.finish(out, pass);
    return pass ? kExitAccept : kExitReject;
}

int run_lemma2(size_t q, uint32_t x_size, uint32_t y_size, size_t trials, uint64_t seed,
               const std::string& out) {
    qrom::SuiteConfig config{q, x_size, y_size, trials, seed};
    auto result = qrom::lemma2_suite(config);
    bool pass = result.min_margin >= -1e-9;
    ReportWriter report("lemma2");
    report.body["lemma"] = "multi-input measure-and-reprogram, n = 2";
    report.body["q"] = q;
    report.body["n"] = 2;
    report.body["dims"] = {{"X", x_size}, {"Y", y_size}};
    report.body["trials"] = trials;
    report.body["cases"] = result.cases;
    report.body["min_margin"] = result.min_margin;
    report.body["worst_case"] = result.worst_case;
    report.body["seed"] = seed;
    report.finish(out, pass);
    return pass ? kExitAccept : kExitReject;
}

int run_theorem5(uint64_t y_size, size_t count, uint64_t seed, const std::string& out) {
    bool pass = true;
    double max_deficit = 0.0, slack = 0.0;
    json rows = json::array();
    for (size_t i = 0; i < count; ++i) {
        auto program = qrom::basis::corpus_program(y_size, 2, 2, seed + i);
        auto check = qrom::basis::theorem5_check(program);
        slack = check.slack_bound;
        max_deficit = std::max(max_deficit, check.deficit);
        bool ok = check.deficit <= check.slack_bound + 1e-9;
        pass = pass && ok;
        rows.push_back({{"seed", seed + i},
                        {"p_adversary", check.p_adversary},
                        {"p_simulator", check.p_simulator},
                        {"deficit", check.deficit}});
    }
    // in-order extraction of the exact-chain adversary
    qrom::basis::ChainProgram chain;
    chain.y_size = y_size;
    chain.x0 = 1;
    chain.xs = {0, 1};
    chain.queries = {{qrom::basis::FirstExpr::x0(1), 0}, {qrom::basis::FirstExpr::answer(0), 1}};
    chain.claimed = {qrom::basis::FirstExpr::answer(0), qrom::basis::FirstExpr::answer(1)};
    std::vector<uint64_t> expected{chain.x0, 0, 1};
    bool ordered_ok = false;
    for (const auto& schedule : qrom::basis::increasing_schedules(4, 2)) {
        auto run = qrom::basis::ordered_simulate_seeded(chain, schedule, {2 % y_size, 3 % y_size}, seed);
        if (run.accepted) {
            if (run.extracted_x != expected) pass = false;
            ordered_ok = true;
        }
    }
    pass = pass && ordered_ok;

    ReportWriter report("theorem5");
    report.body["lemma"] = "measure-and-reprogram, enforced extraction order";
    report.body["q"] = 2;
    report.body["n"] = 2;
    report.body["dims"] = {{"Y", y_size}};
    report.body["trials"] = count;
    report.body["aggregate_slack_bound"] = slack;
    report.body["max_deficit"] = max_deficit;
    report.body["ordered_extraction"] = ordered_ok;
    report.body["seed"] = seed;
    report.body["adversaries"] = rows;
    report.finish(out, pass);
    return pass ? kExitAccept : kExitReject;
}

std::string attack_csv(const std::vector<attacks::AttackReport>& rows, const std::string& kind) {
    std::ostringstream csv;
    csv << "kind,q,n,C,gamma,samples,mean_p1,mean_p2,bound,precond_ok,seed\n";
    csv.precision(17);
    for (const auto& r : rows) {
        csv << kind << ',' << r.q << ',' << r.n << ',' << r.challenge_cardinality << ',' << r.gamma
            << ',' << r.samples << ',' << r.mean_p1 << ',' << r.mean_p2 << ',' << r.bound << ','
            << (r.preconditions.ok() ? 1 : 0) << ',' << r.seed << '\n';
    }
    return csv.str();
}

json attack_row_json(const attacks::AttackReport& r, const std::string& kind) {
    return json{{"kind", kind},
                {"q", r.q},
                {"n", r.n},
                {"C", r.challenge_cardinality},
                {"gamma", r.gamma},
                {"samples", r.samples},
                {"exhaustive", r.exhaustive},
                {"mean_p1", r.mean_p1},
                {"mean_p2", r.mean_p2},
                {"std_error_p2", r.std_error_p2},
                {"bound", r.bound},
                {"precond_ok", r.preconditions.ok()},
                {"seed", r.seed}};
}

int run_grover(const std::string& q_list, uint64_t cardinality, unsigned gamma, size_t samples,
               bool exhaustive, uint64_t seed, const std::string& out, const std::string& format) {
    mock::MockSigma mock(gamma, cardinality, seed);
    std::vector<attacks::AttackReport> rows;
    bool pass = true;
    for (size_t q : parse_list(q_list)) {
        attacks::GroverParams params;
        params.q = q;
        params.challenge_cardinality = cardinality;
        params.gamma = gamma;
        params.samples = samples;
        params.seed = seed;
        params.exhaustive = exhaustive;
        auto report = attacks::expected_attack_success(params, mock);
        pass = pass && report.mean_p2 >= report.bound - 1e-12;
        rows.push_back(report);
    }
    if (format == "csv") {
        std::string text = attack_csv(rows, "grover");
        if (out.empty())
            std::cout << text;
        else
            write_text(out, text);
        return pass ? kExitAccept : kExitReject;
    }
    ReportWriter report("grover");
    report.body["seed"] = seed;
    json jrows = json::array();
    for (const auto& r : rows) jrows.push_back(attack_row_json(r, "grover"));
    report.body["rows"] = jrows;
    report.finish(out, pass);
    return pass ? kExitAccept : kExitReject;
}

int run_grover_circuit(size_t n_max, size_t q_max, const std::string& out) {
    double worst = 0.0;
    for (size_t n = 1; n <= n_max; ++n) {
        for (size_t marked = 0; marked <= n; ++marked) {
            std::vector<size_t> set(marked);
            for (size_t i = 0; i < marked; ++i) set[i] = i;
            for (size_t q = 0; q <= q_max; ++q) {
                double diff = std::abs(attacks::grover_circuit(n, set, q) -
                                       attacks::grover_success(static_cast<double>(marked) / n, q));
                worst = std::max(worst, diff);
            }
        }
    }
    bool pass = worst <= 1e-9;
    ReportWriter report("grover-circuit");
    report.body["n_max"] = n_max;
    report.body["q_max"] = q_max;
    report.body["max_abs_difference"] = worst;
    report.finish(out, pass);
    return pass ? kExitAccept : kExitReject;
}

int run_tightness(size_t n, size_t q_total, uint64_t inner_c, unsigned pad_bits, unsigned gamma,
                  size_t samples, uint64_t seed, const std::string& out) {
    attacks::MultiRoundParams params;
    params.n = n;
    params.q_total = q_total;
    params.inner_cardinality = inner_c;
    params.pad_bits = pad_bits;
    params.gamma = gamma;
    params.samples = samples;
    params.seed = seed;
    auto mr = attacks::multiround_attack(params);
    bool pass = mr.mean_product >= mr.bound;

    // Sandwich consistency at the computable level: the measured success S
    // sits above c1 q^{2n} eps, and the reduction constant applied to S
    // never certifies an interactive success below eps.
    double eps = std::pow(static_cast<double>(inner_c), -static_cast<double>(n));
    double c1 = attacks::theoretical_loss(attacks::LossKind::AttackC1, q_total, n).value();
    double lower = c1 * std::pow(static_cast<double>(q_total), 2.0 * n) * eps;
    auto mfs = attacks::theoretical_loss(attacks::LossKind::Mfs, q_total, n);
    double factorial = 1.0;
    for (size_t i = 2; i <= n; ++i) factorial *= static_cast<double>(i);
    double certified =
        mfs.value() * mr.mean_product -
        factorial / static_cast<double>(inner_c << pad_bits);
    bool sandwich_ok = mr.mean_product >= lower && certified <= eps;
    pass = pass && sandwich_ok;

    ReportWriter report("tightness");
    report.body["n"] = n;
    report.body["q_total"] = q_total;
    report.body["inner_C"] = inner_c;
    report.body["pad_bits"] = pad_bits;
    report.body["gamma"] = gamma;
    report.body["samples"] = samples;
    report.body["seed"] = seed;
    report.body["mean_product_success"] = mr.mean_product;
    report.body["std_error"] = mr.std_error;
    report.body["bound"] = mr.bound;
    report.body["mean_round_p1"] = mr.mean_round_p1;
    report.body["sandwich_lower"] = lower;
    report.body["sandwich_certified_interactive"] = certified;
    report.body["sandwich_epsilon"] = eps;
    report.body["sandwich_ok"] = sandwich_ok;
    report.finish(out, pass);
    return pass ? kExitAccept : kExitReject;
}

int run_q2_extract(size_t trials, unsigned field, size_t nv, size_t m, uint64_t seed,
                   const std::string& out) {
    mq::Scheme scheme(mq::MqParams::generate(static_cast<uint8_t>(field), nv, m, seed));
    Rng rng("q2-exp", seed);
    size_t successes = 0, pattern_ok = 0;
    for (size_t i = 0; i < trials; ++i) {
        auto [w, x] = scheme.generate_instance(rng);
        auto four = q2::rewind_collect(scheme, w, x, seed + i);
        if (q2::check_q2_pattern(four.transcripts)) ++pattern_ok;
        auto result = q2::q2_extract_mq(scheme, x, four);
        auto* secret = std::get_if<mq::FieldVec>(&result);
        if (secret != nullptr && scheme.params().eval(*secret) == scheme.decode_vec(x, m)) ++successes;
    }
    bool pass = successes == trials && pattern_ok == trials;
    ReportWriter report("q2-extract");
    report.body["trials"] = trials;
    report.body["field"] = field;
    report.body["nv"] = nv;
    report.body["m"] = m;
    report.body["extracted"] = successes;
    report.body["pattern_ok"] = pattern_ok;
    report.body["seed"] = seed;
    report.finish(out, pass);
    return pass ? kExitAccept : kExitReject;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-round Fiat-Shamir toolkit: proofs, signatures, OR proofs, q2 extraction,\n"
                 "and numerical certification of QROM measure-and-reprogram bounds."};
    app.require_subcommand(1);

    std::string key_path, key0_path, key1_path, out_path, proof_path, sig_path;
    std::string message, message_file, format = "json";
    uint64_t seed = 0;
    bool public_only = false;

    auto* keygen = app.add_subcommand("keygen", "generate a key pair");
    SchemeConfig keygen_cfg;
    keygen_cfg.add_options(keygen);
    keygen->add_option("--seed", seed, "key generation seed")->required();
    keygen->add_option("--out", out_path, "key file (JSON)")->required();
    keygen->add_flag("--public-only", public_only, "omit the secret key");

    auto* sign = app.add_subcommand("sign", "sign a message");
    sign->add_option("--key", key_path)->required();
    sign->add_option("--message", message);
    sign->add_option("--message-file", message_file);
    sign->add_option("--seed", seed)->required();
    sign->add_option("--out", out_path)->required();

    auto* verify = app.add_subcommand("verify", "verify a signature");
    verify->add_option("--key", key_path)->required();
    verify->add_option("--message", message);
    verify->add_option("--message-file", message_file);
    verify->add_option("--signature", sig_path)->required();

    auto* fs_prove = app.add_subcommand("fs-prove", "non-interactive proof of the key's witness");
    fs_prove->add_option("--key", key_path)->required();
    fs_prove->add_option("--seed", seed)->required();
    fs_prove->add_option("--out", out_path)->required();

    auto* fs_verify = app.add_subcommand("fs-verify", "verify a non-interactive proof");
    fs_verify->add_option("--key", key_path)->required();
    fs_verify->add_option("--proof", proof_path)->required();

    int branch = 0;
    auto* or_prove = app.add_subcommand("or-prove", "sequential OR proof over two instances");
    or_prove->add_option("--key0", key0_path)->required();
    or_prove->add_option("--key1", key1_path)->required();
    or_prove->add_option("--branch", branch, "which witness is known")->required();
    or_prove->add_option("--seed", seed)->required();
    or_prove->add_option("--out", out_path)->required();

    auto* or_verify = app.add_subcommand("or-verify", "verify a sequential OR proof");
    or_verify->add_option("--key0", key0_path)->required();
    or_verify->add_option("--key1", key1_path)->required();
    or_verify->add_option("--proof", proof_path)->required();

    auto* q2_demo = app.add_subcommand("q2-demo", "rewind a 5-pass MQ prover and extract the key");
    SchemeConfig q2_cfg;
    q2_demo->add_option("--field", q2_cfg.field);
    q2_demo->add_option("--nv", q2_cfg.nv);
    q2_demo->add_option("--m", q2_cfg.m);
    q2_demo->add_option("--seed", seed)->required();
    q2_demo->add_option("--out", out_path);

    auto* exp = app.add_subcommand("exp", "run a certification experiment");
    exp->require_subcommand(1);
    size_t exp_q = 2, exp_trials = 200, exp_samples = 100, exp_count = 50;
    uint32_t exp_x = 2, exp_y = 2;
    uint64_t exp_c = 16384, exp_y_chain = 16, exp_inner_c = 1024;
    unsigned exp_gamma = 14, exp_pad = 0;
    size_t exp_n = 2, exp_q_total = 16, exp_nmax = 16, exp_qmax = 5;
    bool exp_exhaustive = false;
    std::string exp_q_list = "1";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "experiment seed (mandatory for randomized runs)")->required();
        cmd->add_option("--out", out_path, "report path (stdout when omitted)");
        cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* e_lemma1 = exp->add_subcommand("lemma1", "single-input bound suite");
    e_lemma1->add_option("--q", exp_q);
    e_lemma1->add_option("--X", exp_x);
    e_lemma1->add_option("--Y", exp_y);
    e_lemma1->add_option("--trials", exp_trials);
    add_common(e_lemma1);

    auto* e_theorem1 = exp->add_subcommand("theorem1", "single-input theorem, exact enumeration");
    e_theorem1->add_option("--q", exp_q);
    e_theorem1->add_option("--trials", exp_trials);
    add_common(e_theorem1);

    auto* e_lemma2 = exp->add_subcommand("lemma2", "two-input bound suite");
    e_lemma2->add_option("--q", exp_q);
    e_lemma2->add_option("--X", exp_x);
    e_lemma2->add_option("--Y", exp_y);
    e_lemma2->add_option("--trials", exp_trials);
    add_common(e_lemma2);

    auto* e_theorem5 = exp->add_subcommand("theorem5", "ordered extraction aggregate");
    e_theorem5->add_option("--Y", exp_y_chain);
    e_theorem5->add_option("--count", exp_count);
    add_common(e_theorem5);

    auto* e_grover = exp->add_subcommand("grover", "attack scaling against q^2/C");
    e_grover->add_option("--q", exp_q_list, "comma-separated iteration counts");
    e_grover->add_option("--C", exp_c);
    e_grover->add_option("--gamma", exp_gamma);
    e_grover->add_option("--samples", exp_samples);
    e_grover->add_flag("--enumerate", exp_exhaustive, "exact table enumeration");
    add_common(e_grover);

    auto* e_circuit = exp->add_subcommand("grover-circuit", "circuit vs closed form");
    e_circuit->add_option("--n-max", exp_nmax);
    e_circuit->add_option("--q-max", exp_qmax);
    add_common(e_circuit);

    auto* e_tight = exp->add_subcommand("tightness", "multi-round attack and sandwich constants");
    e_tight->add_option("--n", exp_n);
    e_tight->add_option("--q-total", exp_q_total);
    e_tight->add_option("--inner-C", exp_inner_c);
    e_tight->add_option("--pad-bits", exp_pad);
    e_tight->add_option("--gamma", exp_gamma);
    e_tight->add_option("--samples", exp_samples);
    add_common(e_tight);

    auto* e_q2 = exp->add_subcommand("q2-extract", "rewinding extraction success rate");
    e_q2->add_option("--trials", exp_trials);
    e_q2->add_option("--field", q2_cfg.field);
    e_q2->add_option("--nv", q2_cfg.nv);
    e_q2->add_option("--m", q2_cfg.m);
    add_common(e_q2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitAccept : kExitUsage;
    }

    try {
        if (keygen->parsed()) {
            auto scheme = keygen_cfg.build();
            auto keys = sig::keygen(*scheme, seed);
            json j{{"scheme", keygen_cfg.scheme},
                   {"params", keygen_cfg.to_params_json()},
                   {"pk_hex", hex_encode(keys.public_key)}};
            if (!public_only) j["sk_hex"] = hex_encode(keys.secret_key);
            write_text(out_path, j.dump(2) + "\n");
            return kExitAccept;
        }
        if (sign->parsed()) {
            auto key = load_key(key_path);
            if (key.secret_key.empty()) throw UsageError("key file has no secret key");
            auto oracle = oracle_for(*key.scheme);
            auto signature = sig::sign(*key.scheme, key.secret_key, key.public_key,
                                       message_arg(message, message_file), oracle, seed);
            write_file(out_path, sig::serialize_signature(key.scheme->id(), signature));
            return kExitAccept;
        }
        if (verify->parsed()) {
            auto key = load_key(key_path);
            auto [scheme_id, signature] = sig::deserialize_signature(read_file(sig_path));
            if (scheme_id != key.scheme->id()) throw UsageError("signature scheme does not match the key");
            auto oracle = oracle_for(*key.scheme);
            bool ok = sig::verify(*key.scheme, key.public_key, message_arg(message, message_file),
                                  signature, oracle);
            std::cout << (ok ? "accept" : "reject") << "\n";
            return ok ? kExitAccept : kExitReject;
        }
        if (fs_prove->parsed()) {
            auto key = load_key(key_path);
            if (key.secret_key.empty()) throw UsageError("key file has no secret key");
            auto oracle = oracle_for(*key.scheme);
            auto proof =
                fs::prove(*key.scheme, key.secret_key, oracle, key.public_key, Rng("fsq-cli-prove", seed));
            write_file(out_path, fs::serialize_proof(proof));
            return kExitAccept;
        }
        if (fs_verify->parsed()) {
            auto key = load_key(key_path);
            auto proof = fs::deserialize_proof(read_file(proof_path));
            if (proof.instance != key.public_key) throw UsageError("proof instance does not match the key");
            auto oracle = oracle_for(*key.scheme);
            bool ok = fs::verify(*key.scheme, oracle, proof);
            std::cout << (ok ? "accept" : "reject") << "\n";
            return ok ? kExitAccept : kExitReject;
        }
        if (or_prove->parsed()) {
            auto k0 = load_key(key0_path);
            auto k1 = load_key(key1_path);
            const auto& known = branch == 0 ? k0 : k1;
            if (known.secret_key.empty()) throw UsageError("known branch's key file has no secret key");
            auto oracle = oracle_for(*k0.scheme);
            auto proof = orp::or_prove(*k0.scheme, *k1.scheme, k0.public_key, k1.public_key, branch,
                                       known.secret_key, oracle, seed);
            write_file(out_path, orp::serialize_or_proof(k0.public_key, k1.public_key, proof));
            return kExitAccept;
        }
        if (or_verify->parsed()) {
            auto k0 = load_key(key0_path);
            auto k1 = load_key(key1_path);
            auto [x0, x1, proof] = orp::deserialize_or_proof(read_file(proof_path));
            if (x0 != k0.public_key || x1 != k1.public_key)
                throw UsageError("proof instances do not match the keys");
            auto oracle = oracle_for(*k0.scheme);
            bool ok = orp::or_verify(*k0.scheme, *k1.scheme, x0, x1, proof, oracle);
            std::cout << (ok ? "accept" : "reject") << "\n";
            return ok ? kExitAccept : kExitReject;
        }
        if (q2_demo->parsed()) {
            return run_q2_extract(1, q2_cfg.field, q2_cfg.nv, q2_cfg.m, seed, out_path);
        }
        if (e_lemma1->parsed()) return run_lemma1(exp_q, exp_x, exp_y, exp_trials, seed, out_path);
        if (e_theorem1->parsed()) return run_theorem1(exp_q, exp_trials, seed, out_path);
        if (e_lemma2->parsed()) return run_lemma2(exp_q, exp_x, exp_y, exp_trials, seed, out_path);
        if (e_theorem5->parsed()) return run_theorem5(exp_y_chain, exp_count, seed, out_path);
        if (e_grover->parsed())
            return run_grover(exp_q_list, exp_c, exp_gamma, exp_samples, exp_exhaustive, seed,
                              out_path, format);
        if (e_circuit->parsed()) return run_grover_circuit(exp_nmax, exp_qmax, out_path);
        if (e_tight->parsed())
            return run_tightness(exp_n, exp_q_total, exp_inner_c, exp_pad, exp_gamma, exp_samples,
                                 seed, out_path);
        if (e_q2->parsed())
            return run_q2_extract(exp_trials, q2_cfg.field, q2_cfg.nv, q2_cfg.m, seed, out_path);
        throw UsageError("no subcommand matched");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
