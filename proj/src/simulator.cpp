#include "standby/simulator.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "standby/kernels.hpp"
#include "standby/report.hpp"

namespace standby {

void SimConfig::validate() const {
    if (replications < 1) throw Error(ErrorCode::ConfigInvalid, "need at least one replication");
    if (warmup < 0 || steps <= warmup) throw Error(ErrorCode::ConfigInvalid, "need steps > warmup >= 0");
    if (replacement_samples < 0 || trace_steps < 0) throw Error(ErrorCode::ConfigInvalid, "negative counts");
}

namespace {

using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

double uniform(Rng& rng) { return std::generate_canonical<double, 53>(rng); }

// Index drawn from a probability row; -1 means the remaining (exit) mass.
int draw(Rng& rng, const Matrix& M, int row) {
    double u = uniform(rng);
    const int n = static_cast<int>(M.cols());
    for (int j = 0; j < n; ++j) {
        u -= M(row, j);
        if (u < 0.0) return j;
    }
    return -1;
}

int draw(Rng& rng, const RowVector& p) {
    double u = uniform(rng);
    int last = 0;
    for (int j = 0; j < p.size(); ++j) {
        if (p(j) <= 0.0) continue;
        last = j;
        u -= p(j);
        if (u < 0.0) return j;
    }
    return last;
}

bool bernoulli(Rng& rng, double p) { return uniform(rng) < p; }

enum class Outcome { Stay, Repairable, NonRepairable };

// Internal step from row i of A with exits (r0, nr0): returns the new phase or a failure.
Outcome internal_step(Rng& rng, const Matrix& A, const Vector& r0, int i, int& next) {
    double u = uniform(rng);
    for (int j = 0; j < A.cols(); ++j) {
        u -= A(i, j);
        if (u < 0.0) { next = j; return Outcome::Stay; }
    }
    u -= r0(i);
    return u < 0.0 ? Outcome::Repairable : Outcome::NonRepairable;
}

struct State {
    int k = 0, s = 0;
    Mode mode = Mode::Vacation;
    Queue queue;
    int i = 0, j = 0, u = 0;  // unit phases, meaningful while s < k
    int aux = 0;              // vacation or repair phase; -1 when idle
};

class Simulation {
public:
    Simulation(const SystemModel& model, const EconomicParams& params)
        : m_(model), p_(params), layout_(model.n, model.R, model.dims()) {
        const int n = model.n;
        block_index_.assign((n + 1) * (n + 1) * 2, -1);
        for (std::size_t b = 0; b < layout_.blocks().size(); ++b) {
            const BlockId& id = layout_.blocks()[b].id;
            block_index_[slot(id.k, id.s, id.mode)] = static_cast<int>(b);
        }
        gamma_st_ = renewal_stationary(model.unit.shock);
    }

    const StateSpaceLayout& layout() const { return layout_; }
    int block_of(const State& st) const { return block_index_[slot(st.k, st.s, st.mode)]; }

    State initial(Rng& rng) const {
        State st;
        st.k = m_.n;
        st.mode = Mode::Vacation;
        st.i = draw(rng, m_.unit.alpha);
        st.j = draw(rng, gamma_st_);
        st.u = draw(rng, m_.unit.inspection.alpha);
        st.aux = draw(rng, m_.vacation.alpha);
        return st;
    }

    // Reward of the current state before the transition.
    double reward(const State& st) const {
        double r = st.s < st.k ? p_.B - p_.c0(st.i) : -p_.C;
        if (st.mode == Mode::Workplace) {
            if (st.s == 0) r -= p_.H;
            else r -= (st.queue.front() == Task::Corrective ? p_.cr1 : p_.cr2)(st.aux);
        }
        return r;
    }

    struct StepResult {
        Label label;
        bool returned;  // vacation ended or was interrupted
    };

    StepResult step(Rng& rng, State& st) const {
        const OnlineUnitModel& U = m_.unit;
        const bool online = st.s < st.k;
        Label base = Label::O;
        int i2 = st.i, j2 = st.j, u2 = st.u;

        if (online) {
            int i1 = st.i;
            Outcome internal = internal_step(rng, U.T, U.T_r0, st.i, i1);
            int jj = draw(rng, U.shock.S, st.j);
            bool shocked = jj < 0;
            j2 = shocked ? draw(rng, U.shock.alpha) : jj;
            Outcome result = internal;
            if (shocked) {
                if (bernoulli(rng, U.omega0)) result = Outcome::NonRepairable;
                else if (internal == Outcome::Stay) result = internal_step(rng, U.W, U.W_r0, i1, i2);
            } else if (internal == Outcome::Stay) {
                i2 = i1;
            }
            if (result == Outcome::Repairable) base = Label::A;
            else if (result == Outcome::NonRepairable) base = Label::C;
            else {
                int uu = draw(rng, U.inspection.S, st.u);
                if (uu >= 0) u2 = uu;
                else if (st.i >= U.m1) base = Label::B;  // major damage seen before the step
                else u2 = draw(rng, U.inspection.alpha);
            }
        } else {
            int jj = draw(rng, U.shock.S, st.j);
            j2 = jj >= 0 ? jj : draw(rng, U.shock.alpha);
        }

        bool completion = false, vac_end = false;
        int aux2 = st.aux;
        if (st.mode == Mode::Vacation) {
            int a = draw(rng, m_.vacation.S, st.aux);
            if (a < 0) vac_end = true;
            else aux2 = a;
        } else if (st.s > 0) {
            int a = draw(rng, m_.service(st.queue.front()).S, st.aux);
            if (a < 0) completion = true;
            else aux2 = a;
        }

        const Mode mode = st.mode;
        const bool serving = mode == Mode::Workplace && st.s > 0;
        if (completion) st.queue.erase(st.queue.begin());
        if (base == Label::A) st.queue.push_back(Task::Corrective);
        if (base == Label::B) st.queue.push_back(Task::Preventive);
        if (base == Label::C) --st.k;
        st.s = static_cast<int>(st.queue.size());

        if (st.k == 0) {
            st = State{};
            st.k = m_.n;
            st.mode = Mode::Vacation;
            st.i = draw(rng, U.alpha);
            st.j = j2;
            st.u = draw(rng, U.inspection.alpha);
            st.aux = draw(rng, m_.vacation.alpha);
            return {Label::NS, vac_end};
        }

        // Online unit after the step.
        const bool unit_now = st.s < st.k;
        if (online && base == Label::O) {
            st.i = i2, st.u = u2;
        } else if (unit_now) {
            st.i = draw(rng, U.alpha);
            st.u = draw(rng, U.inspection.alpha);
        }
        st.j = j2;

        const int R = m_.R;
        const int N2 = st.k - R + 1;
        Label label = base;
        auto start_service = [&] { st.aux = st.s == 0 ? -1 : draw(rng, m_.service(st.queue.front()).alpha); };
        if (mode == Mode::Workplace) {
            if (st.k < R || st.s >= N2) {
                if (serving && !completion) st.aux = aux2;
                else start_service();
            } else {
                st.mode = Mode::Vacation;
                st.aux = draw(rng, m_.vacation.alpha);
            }
        } else if (st.k < R || (vac_end && st.s >= N2)) {
            st.mode = Mode::Workplace;
            if (vac_end) label = with_return(base);
            start_service();
            return {label, true};
        } else if (vac_end) {
            st.aux = draw(rng, m_.vacation.alpha);
        } else {
            st.aux = aux2;
        }
        return {label, vac_end};
    }

private:
    const SystemModel& m_;
    const EconomicParams& p_;
    StateSpaceLayout layout_;
    std::vector<int> block_index_;
    RowVector gamma_st_;

    std::size_t slot(int k, int s, Mode mode) const {
        return (static_cast<std::size_t>(k) * (m_.n + 1) + s) * 2 + (mode == Mode::Workplace ? 1 : 0);
    }

    static Label with_return(Label base) {
        switch (base) {
            case Label::O: return Label::D;
            case Label::A: return Label::AD;
            case Label::B: return Label::BD;
            case Label::C: return Label::CD;
            default: return base;
        }
    }
};

struct RepTally {
    std::vector<double> block;  // fraction of steps per block
    std::array<double, kLabelCount> labels{};
    double rb = 0, profit = 0, replacement = 0;
    std::string trace;
};

std::string trace_line(long long t, const State& st) {
    std::ostringstream os;
    os << t << ',' << st.k << ',' << st.s << ',' << (st.mode == Mode::Vacation ? "v" : "nv") << ',';
    for (std::size_t q = 0; q < st.queue.size(); ++q) os << (q ? "-" : "") << static_cast<int>(st.queue[q]);
    os << ',';
    if (st.s < st.k) os << st.i << ',' << st.j << ',' << st.u;
    else os << ',' << st.j << ',';
    os << ',' << st.aux << '\n';
    return os.str();
}

RepTally run_replication(const Simulation& sim, const EconomicParams& params, const SimConfig& cfg, int rep,
                         int n) {
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(rep));
    RepTally tally;
    tally.block.assign(sim.layout().blocks().size(), 0.0);
    std::vector<long long> counts(tally.block.size(), 0);
    std::array<long long, kLabelCount> labels{};
    long long rb = 0;
    double profit = 0.0;
    const bool tracing = rep == 0 && cfg.trace_steps > 0;
    if (tracing) tally.trace = "step,k,s,mode,queue,internal,shock,inspection,aux\n";

    State st = sim.initial(rng);
    for (long long t = 0; t < cfg.steps; ++t) {
        if (tracing && t < cfg.trace_steps) tally.trace += trace_line(t, st);
        const bool counted = t >= cfg.warmup;
        double r = counted ? sim.reward(st) : 0.0;
        if (counted) ++counts[sim.block_of(st)];
        auto [label, returned] = sim.step(rng, st);
        if (!counted) continue;
        ++labels[static_cast<int>(label)];
        if (returned) ++rb;
        switch (label) {
            case Label::A: case Label::AD: r -= params.fcr; break;
            case Label::B: case Label::BD: r -= params.fmi; break;
            case Label::NS: r -= n * params.fnu; break;
            default: break;
        }
        if (returned) r -= params.G;
        profit += r;
    }
    const double len = static_cast<double>(cfg.steps - cfg.warmup);
    for (std::size_t b = 0; b < counts.size(); ++b) tally.block[b] = counts[b] / len;
    for (int y = 0; y < kLabelCount; ++y) tally.labels[y] = labels[y] / len;
    tally.rb = rb / len;
    tally.profit = profit / len;

    // First replacement epochs from fresh systems.
    double sum = 0.0;
    for (int k = 0; k < cfg.replacement_samples; ++k) {
        State s = sim.initial(rng);
        long long t = 0;
        while (true) {
            ++t;
            if (sim.step(rng, s).label == Label::NS) break;
        }
        sum += static_cast<double>(t);
    }
    if (cfg.replacement_samples > 0) tally.replacement = sum / cfg.replacement_samples;
    return tally;
}

Estimate summarize(const std::vector<double>& xs) {
    Estimate e;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) e.mean += x;
    e.mean /= n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - e.mean) * (x - e.mean);
        e.se = std::sqrt(ss / (n - 1.0) / n);
    }
    return e;
}

}  // namespace

SimReport simulate(const SystemModel& model, const EconomicParams& params, const SimConfig& cfg) {
    model.validate();
    params.validate(model);
    cfg.validate();
    Simulation sim(model, params);
    std::vector<RepTally> reps(cfg.replications);
    if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(kernels::worker_count())
        for (int r = 0; r < cfg.replications; ++r) reps[r] = run_replication(sim, params, cfg, r, model.n);
    } else {
        for (int r = 0; r < cfg.replications; ++r) reps[r] = run_replication(sim, params, cfg, r, model.n);
    }

    SimReport out;
    auto over = [&](auto get) {
        std::vector<double> xs;
        for (const RepTally& t : reps) xs.push_back(get(t));
        return summarize(xs);
    };
    const auto& blocks = sim.layout().blocks();
    auto mass_if = [&](const RepTally& t, auto pred) {
        double m = 0.0;
        for (std::size_t b = 0; b < blocks.size(); ++b)
            if (pred(blocks[b].id)) m += t.block[b];
        return m;
    };
    out.A = over([&](const RepTally& t) { return 1.0 - mass_if(t, [](const BlockId& id) { return id.s == id.k; }); });
    out.workplace = over([&](const RepTally& t) { return mass_if(t, [](const BlockId& id) { return id.mode == Mode::Workplace; }); });
    out.vacation = over([&](const RepTally& t) { return mass_if(t, [](const BlockId& id) { return id.mode == Mode::Vacation; }); });
    out.working = over([&](const RepTally& t) {
        return mass_if(t, [](const BlockId& id) { return id.mode == Mode::Workplace && id.s >= 1; });
    });
    out.idle = over([&](const RepTally& t) {
        return mass_if(t, [](const BlockId& id) { return id.mode == Mode::Workplace && id.s == 0; });
    });
    for (int y = 0; y < kLabelCount; ++y) out.label_rate[y] = over([&](const RepTally& t) { return t.labels[y]; });
    auto lab = [](const RepTally& t, Label y) { return t.labels[static_cast<int>(y)]; };
    out.rep = over([&](const RepTally& t) { return lab(t, Label::A) + lab(t, Label::AD); });
    out.mi = over([&](const RepTally& t) { return lab(t, Label::B) + lab(t, Label::BD); });
    out.nr = over([&](const RepTally& t) { return lab(t, Label::C) + lab(t, Label::CD); });
    out.rejoined = over([&](const RepTally& t) {
        return lab(t, Label::D) + lab(t, Label::AD) + lab(t, Label::BD) + lab(t, Label::CD);
    });
    out.ns = over([&](const RepTally& t) { return lab(t, Label::NS); });
    out.rb = over([](const RepTally& t) { return t.rb; });
    out.profit = over([](const RepTally& t) { return t.profit; });
    for (std::size_t b = 0; b < blocks.size(); ++b) out.block_occupancy[blocks[b].id] = over([&](const RepTally& t) { return t.block[b]; });
    out.level_occupancy.assign(model.n + 1, Estimate{});
    for (int k = 1; k <= model.n; ++k)
        out.level_occupancy[k] = over([&](const RepTally& t) { return mass_if(t, [k](const BlockId& id) { return id.k == k; }); });
    if (cfg.replacement_samples > 0) out.first_replacement = over([](const RepTally& t) { return t.replacement; });
    out.trace = reps.front().trace;
    return out;
}

Estimate sample_ph_mean(const DiscretePH& ph, long long samples, std::uint64_t seed) {
    require_valid(ph, "ph");
    Rng rng = make_rng(seed, 0);
    double sum = 0.0, sq = 0.0;
    for (long long n = 0; n < samples; ++n) {
        int phase = draw(rng, ph.alpha);
        long long t = 0;
        while (phase >= 0) {
            ++t;
            phase = draw(rng, ph.S, phase);
        }
        sum += static_cast<double>(t);
        sq += static_cast<double>(t) * static_cast<double>(t);
    }
    Estimate e;
    const double n = static_cast<double>(samples);
    e.mean = sum / n;
    e.se = std::sqrt(std::max(sq / n - e.mean * e.mean, 0.0) / (n - 1.0));
    return e;
}

std::string sim_csv(const SimReport& r, int n) {
    std::ostringstream os;
    os << "measure,mean,se\n";
    auto row = [&](const std::string& name, const Estimate& e) {
        os << name << ',' << fmt_num(e.mean) << ',' << fmt_num(e.se) << '\n';
    };
    row("A", r.A);
    row("Y_nv", r.workplace);
    row("Y_v", r.vacation);
    row("Y_w", r.working);
    row("Y_i", r.idle);
    row("L_rep", r.rep);
    row("L_mi", r.mi);
    row("L_nr", r.nr);
    row("L_rejoined", r.rejoined);
    row("L_rb", r.rb);
    row("L_NS", r.ns);
    for (Label y : kAllLabels) row("rate_" + std::string(label_name(y)), r.label_rate[static_cast<int>(y)]);
    row("Phi", r.profit);
    row("mean_replacement", r.first_replacement);
    for (int k = 1; k <= n; ++k) row("pi_U" + std::to_string(k), r.level_occupancy[k]);
    for (const auto& [id, e] : r.block_occupancy) {
        std::ostringstream name;
        name << "E_" << id.s << "^{" << id.k << (id.mode == Mode::Vacation ? ",v}" : ",nv}");
        row(name.str(), e);
    }
    return os.str();
}

}  // namespace standby
