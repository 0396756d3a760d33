#include "fsq/qrom/basis.hpp"

#include <map>
#include <stdexcept>

#include "fsq/bytes.hpp"

namespace fsq::qrom::basis {

namespace {

struct Point {
    Term first;
    uint64_t second = 0;
    bool operator==(const Point&) const = default;
};

struct Constraint {
    bool equal = true;
    Term a, b;
};

enum class Decision { Yes, No, Unknown };

Decision decide(const Term& a, const Term& b) {
    if (a.kind == Term::Sym || b.kind == Term::Sym) {
        if (a.kind == Term::Sym && b.kind == Term::Sym)
            return a.value == b.value ? Decision::Yes : Decision::Unknown;
        // X0 constants never collide with Y-valued symbols.
        const Term& c = a.kind == Term::Sym ? b : a;
        return c.kind == Term::X0Const ? Decision::No : Decision::Unknown;
    }
    if (a.kind != b.kind) return Decision::No;
    return a.value == b.value ? Decision::Yes : Decision::No;
}

Decision decide_point(const Point& p, const Point& q) {
    if (p.second != q.second) return Decision::No;
    return decide(p.first, q.first);
}

// Probability of a conjunction of equalities between Y-symbols and
// constants: merge into classes, zero on constant clashes, and charge
// 1/|Y| per symbol pinned by the merges.
double equality_probability(const std::vector<Constraint>& eqs, double y_size) {
    std::map<uint64_t, uint64_t> parent;
    std::function<uint64_t(uint64_t)> find = [&](uint64_t s) -> uint64_t {
        auto it = parent.find(s);
        if (it == parent.end() || it->second == s) return s;
        return parent[s] = find(it->second);
    };
    std::map<uint64_t, Term> pinned;  // class root -> constant
    double prob = 1.0;

    for (const auto& c : eqs) {
        Term a = c.a, b = c.b;
        if (a.kind != Term::Sym && b.kind != Term::Sym) {
            if (decide(a, b) != Decision::Yes) return 0.0;
            continue;
        }
        if (a.kind != Term::Sym) std::swap(a, b);
        uint64_t ra = find(a.value);
        auto pa = pinned.find(ra);
        if (b.kind != Term::Sym) {
            if (b.kind == Term::X0Const) return 0.0;
            if (pa == pinned.end()) {
                pinned[ra] = b;
                prob /= y_size;
            } else if (pa->second.value != b.value) {
                return 0.0;
            }
            continue;
        }
        uint64_t rb = find(b.value);
        if (ra == rb) continue;
        auto pb = pinned.find(rb);
        parent[ra] = rb;
        if (pa != pinned.end() && pb != pinned.end()) {
            if (pa->second.value != pb->second.value) return 0.0;
            // Joining two classes pinned to the same constant refunds one
            // of the two pin charges.
            prob *= y_size;
        } else if (pa != pinned.end()) {
            pinned[rb] = pa->second;
        }
        prob /= y_size;
        pinned.erase(ra);
    }
    return prob;
}

double leaf_probability(const std::vector<Constraint>& path, double y_size) {
    std::vector<Constraint> eqs;
    std::vector<Constraint> neqs;
    for (const auto& c : path) (c.equal ? eqs : neqs).push_back(c);
    if (neqs.size() > 20) throw std::runtime_error("basis: too many disequalities");
    double total = 0.0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << neqs.size()); ++mask) {
        std::vector<Constraint> all = eqs;
        int bits = 0;
        for (size_t j = 0; j < neqs.size(); ++j) {
            if (mask & (uint64_t{1} << j)) {
                all.push_back({true, neqs[j].a, neqs[j].b});
                ++bits;
            }
        }
        double p = equality_probability(all, y_size);
        total += (bits % 2 == 0) ? p : -p;
    }
    return total;
}

// One DFS branch of a symbolic trace.
struct TraceState {
    std::vector<std::pair<Point, Term>> hash_cache;  // realized H lookups
    std::vector<Term> answers;                       // per executed query slot
    std::vector<Constraint> path;
    uint64_t next_symbol = 0;
};

class SymbolicTracer {
  public:
    explicit SymbolicTracer(double y_size) : y_size_(y_size) {}

    double total() const { return total_; }

    // Lazy H lookup with branching over point identity; calls `k` with the
    // answer term for every branch.
    template <typename K>
    void lookup(TraceState state, const Point& point, size_t from, K k) {
        for (size_t j = from; j < state.hash_cache.size(); ++j) {
            const auto& [prev, answer] = state.hash_cache[j];
            switch (decide_point(point, prev)) {
                case Decision::Yes:
                    k(std::move(state), answer);
                    return;
                case Decision::No:
                    continue;
                case Decision::Unknown: {
                    TraceState eq = state;
                    eq.path.push_back({true, point.first, prev.first});
                    k(std::move(eq), answer);
                    state.path.push_back({false, point.first, prev.first});
                    continue;
                }
            }
        }
        Term fresh = Term::sym(state.next_symbol++);
        state.hash_cache.push_back({point, fresh});
        k(std::move(state), fresh);
    }

    void finish(TraceState state) { total_ += leaf_probability(state.path, y_size_); }

  private:
    double y_size_;
    double total_ = 0.0;
};

Term eval_first(const FirstExpr& e, const TraceState& state) {
    switch (e.kind) {
        case FirstExpr::X0Label:
            return Term::x0(e.value);
        case FirstExpr::YValue:
            return Term::y(e.value);
        case FirstExpr::Answer:
            return state.answers.at(e.value);
    }
    throw std::logic_error("bad FirstExpr");
}

void validate_program(const ChainProgram& program) {
    if (program.xs.empty()) throw std::invalid_argument("chain program: need n >= 1");
    if (program.claimed.size() != program.xs.size())
        throw std::invalid_argument("chain program: claimed chain length mismatch");
    if ((program.y_size & (program.y_size - 1)) != 0 || program.y_size < 2)
        throw std::invalid_argument("chain program: |Y| must be a power of two");
    for (size_t i = 0; i < program.xs.size(); ++i)
        for (size_t j = i + 1; j < program.xs.size(); ++j)
            if (program.xs[i] == program.xs[j])
                throw std::invalid_argument("chain program: x entries must be distinct");
    for (const auto& qe : program.queries)
        if (qe.first.kind == FirstExpr::Answer && qe.first.value >= program.queries.size())
            throw std::invalid_argument("chain program: answer reference out of range");
    for (const auto& ce : program.claimed)
        if (ce.kind == FirstExpr::Answer && ce.value >= program.queries.size())
            throw std::invalid_argument("chain program: claim reference out of range");
}

}  // namespace

double chain_success_probability(const ChainProgram& program) {
    validate_program(program);
    SymbolicTracer tracer(static_cast<double>(program.y_size));

    // Run the q queries, then resolve the true chain and demand that the
    // claims match it.
    std::function<void(TraceState, size_t)> run_query = [&](TraceState state, size_t t) {
        if (t == program.queries.size()) {
            std::function<void(TraceState, size_t, Term)> chain = [&](TraceState s, size_t i,
                                                                      Term prev) {
                Point p{i == 0 ? Term::x0(program.x0) : prev, program.xs[i]};
                tracer.lookup(std::move(s), p, 0, [&](TraceState s2, Term h) {
                    s2.path.push_back({true, eval_first(program.claimed[i], s2), h});
                    if (i + 1 == program.xs.size())
                        tracer.finish(std::move(s2));
                    else
                        chain(std::move(s2), i + 1, h);
                });
            };
            chain(std::move(state), 0, Term::y(0));
            return;
        }
        Point p{eval_first(program.queries[t].first, state), program.queries[t].second};
        tracer.lookup(std::move(state), p, 0, [&](TraceState s2, Term answer) {
            s2.answers.push_back(answer);
            run_query(std::move(s2), t + 1);
        });
    };
    run_query(TraceState{}, 0);
    return tracer.total();
}

std::vector<std::vector<SchedulePoint>> increasing_schedules(size_t extended_q, size_t n) {
    auto points = legal_schedule_points(extended_q);
    std::vector<std::vector<SchedulePoint>> out;
    std::vector<SchedulePoint> current;
    std::function<void(size_t)> recurse = [&](size_t start) {
        if (current.size() == n) {
            out.push_back(current);
            return;
        }
        for (size_t j = start; j < points.size(); ++j) {
            if (!current.empty() && points[j].i <= current.back().i) continue;
            current.push_back(points[j]);
            recurse(j + 1);
            current.pop_back();
        }
    };
    recurse(0);
    return out;
}

namespace {

// Symbolic run of the extended program A+ under the order-enforcing
// simulator for one schedule; Theta_k is symbol k. Returns the exact
// success probability over (H, Theta).
double simulator_probability(const ChainProgram& program, const std::vector<SchedulePoint>& schedule) {
    const size_t n = program.n();
    const size_t q_ext = program.q() + n;
    SymbolicTracer tracer(static_cast<double>(program.y_size));

    auto target_point = [&](size_t k) -> Point {
        // v*_1 = (x0, x_1); v*_k = (Theta_{k-1}, x_k).
        if (k == 0) return Point{Term::x0(program.x0), program.xs[0]};
        return Point{Term::sym(k - 1), program.xs[k]};
    };

    // Slot-t query input of A+: base queries then the chain extension,
    // whose inputs come from the extension answers themselves.
    auto slot_input = [&](size_t t, const TraceState& state) -> Point {
        if (t < program.q())
            return Point{eval_first(program.queries[t].first, state), program.queries[t].second};
        size_t k = t - program.q();  // extension query k computes chain value k+1
        Term first = k == 0 ? Term::x0(program.x0) : state.answers.at(program.q() + k - 1);
        return Point{first, program.xs[k]};
    };

    // Reprogrammed-oracle lookup: try active target points first, fall back
    // to the lazy H.
    std::function<void(TraceState, Point, size_t, size_t, std::function<void(TraceState, Term)>)>
        oracle_answer = [&](TraceState state, Point point, size_t t, size_t k,
                            std::function<void(TraceState, Term)> done) {
            for (; k < n; ++k) {
                if (t + 1 < schedule[k].i + static_cast<size_t>(schedule[k].b) + 1) continue;
                Point target = target_point(k);
                Decision d = decide_point(point, target);
                if (d == Decision::Yes) {
                    done(std::move(state), Term::sym(k));
                    return;
                }
                if (d == Decision::No) continue;
                TraceState eq = state;
                eq.path.push_back({true, point.first, target.first});
                done(std::move(eq), Term::sym(k));
                state.path.push_back({false, point.first, target.first});
            }
            tracer.lookup(std::move(state), point, 0,
                          [&](TraceState s2, Term h) { done(std::move(s2), h); });
        };

    std::function<void(TraceState, size_t)> run_slot = [&](TraceState state, size_t t) {
        if (t == q_ext) {
            // Output projection: the produced v-tuple must equal the target
            // tuple, and the claims must match the Theta values.
            for (size_t k = 1; k < n; ++k)
                state.path.push_back({true, state.answers.at(program.q() + k - 1), Term::sym(k - 1)});
            for (size_t i = 0; i < n; ++i)
                state.path.push_back({true, eval_first(program.claimed[i], state), Term::sym(i)});
            tracer.finish(std::move(state));
            return;
        }
        Point input = slot_input(t, state);
        // Measurements scheduled at this slot post-select the query input.
        for (size_t k = 0; k < n; ++k) {
            if (schedule[k].i != t) continue;
            Decision d = decide_point(input, target_point(k));
            if (d == Decision::No) return;  // annihilated branch
            if (d == Decision::Unknown)
                state.path.push_back({true, input.first, target_point(k).first});
        }
        oracle_answer(std::move(state), input, t, 0, [&](TraceState s2, Term answer) {
            s2.answers.push_back(answer);
            run_slot(std::move(s2), t + 1);
        });
    };
    TraceState initial;
    initial.next_symbol = n;  // symbols 0..n-1 are the Theta values
    run_slot(std::move(initial), 0);
    return tracer.total();
}

}  // namespace

OrderedCheck theorem5_check(const ChainProgram& program) {
    validate_program(program);
    const size_t n = program.n();
    const size_t q = program.q();
    auto schedules = increasing_schedules(q + n, n);
    if (schedules.empty()) throw std::invalid_argument("theorem5_check: no increasing schedules");

    double p_sim = 0.0;
    for (const auto& schedule : schedules) p_sim += simulator_probability(program, schedule);
    p_sim /= static_cast<double>(schedules.size());

    double p_adv = chain_success_probability(program);

    double factorial = 1.0;
    for (size_t i = 2; i <= n; ++i) factorial *= static_cast<double>(i);
    double denom = 1.0;
    for (size_t i = 0; i < 2 * n; ++i) denom *= static_cast<double>(q + n + 1);

    OrderedCheck out;
    out.p_adversary = p_adv;
    out.p_simulator = p_sim;
    out.deficit = std::max(0.0, factorial * p_adv / denom - p_sim);
    out.slack_bound = factorial / static_cast<double>(program.y_size);
    return out;
}

OrderedRun ordered_simulate(const ChainProgram& program, const std::vector<SchedulePoint>& schedule,
                            const std::vector<uint64_t>& thetas, const HashFn& hash) {
    validate_program(program);
    const size_t n = program.n();
    const size_t q_ext = program.q() + n;
    if (schedule.size() != n || thetas.size() != n)
        throw std::invalid_argument("ordered_simulate: schedule/theta size mismatch");
    for (size_t k = 0; k < n; ++k) {
        if (thetas[k] >= program.y_size) throw std::invalid_argument("ordered_simulate: theta out of range");
        if (k + 1 < n && schedule[k].i >= schedule[k + 1].i)
            throw std::invalid_argument("ordered_simulate: schedule must be increasing");
    }

    struct CPoint {
        bool from_y;
        uint64_t first, second;
        auto operator<=>(const CPoint&) const = default;
    };
    auto hash_value = [&](const CPoint& p) { return hash(p.from_y, p.first, p.second); };

    // Measured points per coordinate; extension answers; claims.
    std::vector<CPoint> measured(n, CPoint{false, 0, 0});
    std::vector<bool> measured_set(n, false);
    std::vector<uint64_t> answers;
    auto concrete_first = [&](const FirstExpr& e) -> CPoint {
        switch (e.kind) {
            case FirstExpr::X0Label:
                return {false, e.value, 0};
            case FirstExpr::YValue:
                return {true, e.value, 0};
            case FirstExpr::Answer:
                return {true, answers.at(e.value), 0};
        }
        throw std::logic_error("bad FirstExpr");
    };

    for (size_t t = 0; t < q_ext; ++t) {
        CPoint input{};
        if (t < program.q()) {
            input = concrete_first(program.queries[t].first);
            input.second = program.queries[t].second;
        } else {
            size_t k = t - program.q();
            input = k == 0 ? CPoint{false, program.x0, 0} : CPoint{true, answers.at(program.q() + k - 1), 0};
            input.second = program.xs[k];
        }
        for (size_t k = 0; k < n; ++k) {
            if (schedule[k].i == t) {
                measured[k] = input;
                measured_set[k] = true;
            }
        }
        // Answer with the oracle reprogrammed at the already measured points.
        uint64_t answer = hash_value(input);
        for (size_t k = 0; k < n; ++k) {
            if (!measured_set[k]) continue;
            if (t + 1 < schedule[k].i + static_cast<size_t>(schedule[k].b) + 1) continue;
            if (input == measured[k]) answer = thetas[k];
        }
        answers.push_back(answer);
    }

    // Coordinates measured at the output read the produced v-tuple.
    std::vector<CPoint> produced(n);
    produced[0] = CPoint{false, program.x0, program.xs[0]};
    for (size_t k = 1; k < n; ++k)
        produced[k] = CPoint{true, answers.at(program.q() + k - 1), program.xs[k]};
    for (size_t k = 0; k < n; ++k) {
        if (!measured_set[k]) {
            measured[k] = produced[k];
            measured_set[k] = true;
        }
    }

    OrderedRun run;
    run.survived = true;
    for (size_t k = 0; k < n && run.survived; ++k) run.survived = measured[k] == produced[k];
    // Extracted tuple (x0, x_1..x_n); a Y-typed first coordinate cannot be a
    // valid x0 and is reported as the out-of-domain sentinel.
    run.extracted_x.push_back(measured[0].from_y ? ~uint64_t{0} : measured[0].first);
    for (size_t k = 0; k < n; ++k) run.extracted_x.push_back(measured[k].second);

    bool predicate = true;
    for (size_t k = 1; k < n && predicate; ++k)
        predicate = answers.at(program.q() + k - 1) == thetas[k - 1];
    for (size_t i = 0; i < n && predicate; ++i) {
        const FirstExpr& claim = program.claimed[i];
        uint64_t value = claim.kind == FirstExpr::YValue ? claim.value
                        : claim.kind == FirstExpr::Answer ? answers.at(claim.value)
                                                          : ~uint64_t{0};
        predicate = value == thetas[i];
    }
    run.accepted = run.survived && predicate;
    return run;
}

OrderedRun ordered_simulate_seeded(const ChainProgram& program,
                                   const std::vector<SchedulePoint>& schedule,
                                   const std::vector<uint64_t>& thetas, uint64_t oracle_seed) {
    // Lazy concrete H keyed on the point.
    auto hash = [&program, oracle_seed](bool from_y, uint64_t first, uint64_t second) {
        Rng rng = Rng("ordered-sim-H", oracle_seed).child(from_y ? "y" : "x0", first).child("snd", second);
        return rng.below(program.y_size);
    };
    return ordered_simulate(program, schedule, thetas, hash);
}

ChainProgram corpus_program(uint64_t y_size, size_t n, size_t q, uint64_t seed) {
    if (n < 1 || q < n) throw std::invalid_argument("corpus_program: need q >= n >= 1");
    Rng rng("theorem5-corpus", seed);
    ChainProgram program;
    program.y_size = y_size;
    program.x0 = rng.below(4);
    for (size_t i = 0; i < n; ++i) program.xs.push_back(i);  // distinct by construction

    // Mix of behaviors: chain followers, partial guessers, blind guessers,
    // and out-of-order provers.
    uint64_t kind = rng.below(4);
    if (kind == 0 || kind == 3) {
        // Follower: query the true chain in order (kind 3 pads leading junk
        // when q allows).
        size_t junk = kind == 3 && q > n ? q - n : 0;
        for (size_t j = 0; j < junk; ++j)
            program.queries.push_back({FirstExpr::y(rng.below(y_size)), 100 + j});
        for (size_t i = 0; i < n; ++i) {
            FirstExpr first = i == 0 ? FirstExpr::x0(program.x0)
                                     : FirstExpr::answer(junk + i - 1);
            program.queries.push_back({first, program.xs[i]});
            program.claimed.push_back(FirstExpr::answer(junk + i));
        }
        while (program.queries.size() < q)
            program.queries.push_back({FirstExpr::y(rng.below(y_size)), 200 + program.queries.size()});
    } else if (kind == 1) {
        // Guesser: guess the first chain value, query onward from it.
        uint64_t guess = rng.below(y_size);
        program.claimed.push_back(FirstExpr::y(guess));
        for (size_t i = 1; i < n; ++i) {
            FirstExpr first = i == 1 ? FirstExpr::y(guess) : FirstExpr::answer(i - 2);
            program.queries.push_back({first, program.xs[i]});
            program.claimed.push_back(FirstExpr::answer(i - 1));
        }
        while (program.queries.size() < q)
            program.queries.push_back({FirstExpr::y(rng.below(y_size)), 300 + program.queries.size()});
    } else {
        // Out of order: guess the first value, query the second point first,
        // then the first point.
        uint64_t guess = rng.below(y_size);
        if (n >= 2) {
            program.queries.push_back({FirstExpr::y(guess), program.xs[1]});
            program.queries.push_back({FirstExpr::x0(program.x0), program.xs[0]});
            program.claimed.push_back(FirstExpr::answer(1));
            program.claimed.push_back(FirstExpr::answer(0));
            for (size_t i = 2; i < n; ++i) {
                program.queries.push_back({FirstExpr::answer(i - 1), program.xs[i]});
                program.claimed.push_back(FirstExpr::answer(i));
            }
            while (program.queries.size() < q)
                program.queries.push_back({FirstExpr::y(rng.below(y_size)), 400 + program.queries.size()});
        } else {
            program.queries.push_back({FirstExpr::x0(program.x0), program.xs[0]});
            program.claimed.push_back(FirstExpr::y(guess));
            while (program.queries.size() < q)
                program.queries.push_back({FirstExpr::y(rng.below(y_size)), 500 + program.queries.size()});
        }
    }
    return program;
}

}  // namespace fsq::qrom::basis
