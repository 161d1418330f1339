// standby-mmap: command-line front end over the model library.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "standby/config.hpp"
#include "standby/optimizer.hpp"
#include "standby/report.hpp"
#include "standby/simulator.hpp"

namespace fs = std::filesystem;
using namespace standby;

namespace {

enum Exit { kOk = 0, kConfig = 2, kIo = 3, kCompute = 4 };

int exit_code(const Error& e) {
    switch (e.code()) {
        case ErrorCode::Io: return kIo;
        case ErrorCode::ConfigInvalid:
        case ErrorCode::NegativeEntry:
        case ErrorCode::RowSumExceedsOne:
        case ErrorCode::InitialMassNotOne:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::InvalidMinorCount:
        case ErrorCode::InvalidThreshold:
        case ErrorCode::ModelInvalid: return kConfig;
        default: return kCompute;
    }
}

ModelConfig load(const std::string& path) {
    if (!fs::exists(path)) throw Error(ErrorCode::Io, "no such file: " + path);
    return load_config(path);
}

int cmd_validate(const std::string& path, const std::string& layout_csv, const std::string& kernel_csv) {
    ModelConfig cfg = load(path);
    StateSpaceLayout layout(cfg.model.n, cfg.model.R, cfg.model.dims());
    const FactorDims& d = layout.dims();
    std::cout << "config ok: n=" << cfg.model.n << " R=" << cfg.model.R << " m=" << d.m << " t=" << d.t
              << " eps=" << d.eps << " vac=" << d.vac << " z1=" << d.z1 << " z2=" << d.z2 << '\n';
    std::cout << "states=" << layout.size() << '\n';
    for (int k = layout.n(); k >= 1; --k) std::cout << "U" << k << " dim=" << layout.level_dim(k) << '\n';
    for (const Block& b : layout.blocks()) std::cout << "  " << b.name() << " dim=" << b.dim << '\n';
    if (!layout_csv.empty()) atomic_write(layout_csv, layout.to_csv());
    if (!kernel_csv.empty()) atomic_write(kernel_csv, kernel_to_csv(build(cfg.model, layout)));
    return kOk;
}

int cmd_measures(const std::string& path, int horizon, const std::string& out) {
    ModelConfig cfg = load(path);
    const SystemModel& model = cfg.model;
    MarkedKernel k = build(model);
    RowVector phi = initial_distribution(model, k.layout);
    StationaryResult st = stationary(k, phi);
    TransientPath tp = transient(k, phi, horizon);
    ReplacementTime rt = replacement_time(k, phi, horizon);
    MeasureReport rep = measure_report(k, st, rt.mean);
    CostVectors cv = build_vectors(model, k.layout, cfg.economics);
    ProfitBreakdown pb = profits(cv, st.pi, rep.rates, cfg.economics, model.n);
    auto counts = event_counts(k, tp);

    std::ostringstream tr;
    tr << "step,A";
    for (int kk = model.n; kk >= 1; --kk) tr << ",Psi_U" << kk;
    tr << ",mu_op,L_rep,L_mi,L_nr,L_rejoined,L_rb,L_NS,Phi\n";
    std::vector<double> psi(model.n + 1, 0.0);
    double mu = 0.0;
    for (int v = 0; v <= horizon; ++v) {
        for (const auto& [id, m] : block_masses(k.layout, tp.p[v])) {
            psi[id.k] += m;
            if (id.s < id.k) mu += m;
        }
        const EventRates& c = counts[v];
        ProfitBreakdown pv = profits(cv, tp, counts, cfg.economics, model.n, v);
        tr << v << ',' << fmt_num(availability(k.layout, tp.p[v]));
        for (int kk = model.n; kk >= 1; --kk) tr << ',' << fmt_num(psi[kk]);
        tr << ',' << fmt_num(mu) << ',' << fmt_num(c.rep) << ',' << fmt_num(c.mi) << ',' << fmt_num(c.nr) << ','
           << fmt_num(c.rejoined) << ',' << fmt_num(c.rb) << ',' << fmt_num(c.ns) << ',' << fmt_num(pv.total) << '\n';
    }
    std::ostringstream rel;
    rel << "step,R\n";
    for (std::size_t v = 0; v < rt.reliability.size(); ++v) rel << v << ',' << fmt_num(rt.reliability[v]) << '\n';

    std::ostringstream summary;
    summary << report_text(rep, model.n) << "Phi=" << fmt_num(pb.total) << '\n'
            << "Phi_amortized=" << fmt_num(pb.amortized) << '\n'
            << "states=" << k.layout.size() << '\n'
            << "recursion_direct_gap=" << fmt_num(st.recursion_direct_gap) << '\n'
            << "balance_residual=" << fmt_num(st.balance_residual) << '\n'
            << "transient_convergence=" << fmt_num(tp.convergence) << '\n';
    if (!st.note.empty()) summary << "note=" << st.note << '\n';

    fs::path dir(out);
    atomic_write(dir / "stationary_report.txt", summary.str());
    atomic_write(dir / "stationary_report.csv", report_csv(rep, model.n));
    atomic_write(dir / "transient.csv", tr.str());
    atomic_write(dir / "reliability.csv", rel.str());
    atomic_write(dir / "profit.csv", profit_csv(pb));
    std::cout << summary.str();
    return kOk;
}

Grid parse_grid(const std::string& text) {
    Grid g;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (text.find(':') == std::string::npos) {
        if (!(is >> g.lo)) throw Error(ErrorCode::ConfigInvalid, "--grid: expected lo:hi:step or a single value");
        g.hi = g.lo;
        g.step = 1.0;
        return g;
    }
    if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':')
        throw Error(ErrorCode::ConfigInvalid, "--grid: expected lo:hi:step");
    return g;
}

std::pair<int, int> parse_range(const std::string& text, int n) {
    if (text.empty()) return {1, n};
    int a = 0, b = 0;
    char c = 0;
    std::istringstream is(text);
    if (text.find(':') == std::string::npos) {
        if (!(is >> a)) throw Error(ErrorCode::ConfigInvalid, "--R: expected lo:hi or a single value");
        return {a, a};
    }
    if (!(is >> a >> c >> b) || c != ':') throw Error(ErrorCode::ConfigInvalid, "--R: expected lo:hi");
    return {a, b};
}

int cmd_optimize(const std::string& path, const std::string& family, const std::string& grid,
                 const std::string& refine, const std::string& Rs, const std::string& pm, const std::string& out) {
    ModelConfig cfg = load(path);
    SweepSpec spec;
    if (family == "geometric") spec.family = VacationFamily::Geometric;
    else if (family == "erlang2") spec.family = VacationFamily::Erlang2;
    else throw Error(ErrorCode::ConfigInvalid, "--family: geometric or erlang2");
    spec.grid = parse_grid(grid);
    if (!refine.empty()) spec.refine_step = std::stod(refine);
    std::tie(spec.R_lo, spec.R_hi) = parse_range(Rs, cfg.model.n);
    if (pm != "on" && pm != "off") throw Error(ErrorCode::ConfigInvalid, "--pm: on or off");
    spec.pm = pm == "on";
    SweepResult res = sweep(cfg.model, cfg.economics, spec);
    if (!out.empty()) atomic_write(out, sweep_csv(res, spec.family));
    const SweepRow& best = res.rows[*res.argmax];
    std::cout << argmax_line(res, spec.family) << " Phi=" << fmt_num(best.phi) << '\n';
    return kOk;
}

int cmd_simulate(const std::string& path, const SimConfig& sc, const std::string& out, const std::string& trace) {
    ModelConfig cfg = load(path);
    const SystemModel& model = cfg.model;
    SimReport sim = simulate(model, cfg.economics, sc);

    MarkedKernel k = build(model);
    RowVector phi = initial_distribution(model, k.layout);
    StationaryResult st = stationary(k, phi);
    EventRates rates = event_rates(k, st.pi);
    RepairpersonProportions up = repairperson_proportions(k.layout, st.pi);
    CostVectors cv = build_vectors(model, k.layout, cfg.economics);
    ProfitBreakdown pb = profits(cv, st.pi, rates, cfg.economics, model.n);
    double mean = 0.0;
    bool have_mean = k[Label::NS].nonZeros() > 0;
    if (have_mean) mean = replacement_time(k, phi, 0).mean;

    std::ostringstream cmp;
    cmp << "measure,analytic,simulated,se,z\n";
    auto row = [&](const std::string& name, double a, const Estimate& e) {
        double z = e.se > 0 ? (e.mean - a) / e.se : (e.mean == a ? 0.0 : INFINITY);
        cmp << name << ',' << fmt_num(a) << ',' << fmt_num(e.mean) << ',' << fmt_num(e.se) << ',' << fmt_num(z) << '\n';
    };
    row("A", availability(k.layout, st.pi), sim.A);
    row("Y_nv", up.workplace, sim.workplace);
    row("Y_v", up.vacation, sim.vacation);
    row("Y_w", up.working, sim.working);
    row("Y_i", up.idle, sim.idle);
    row("L_rep", rates.rep, sim.rep);
    row("L_mi", rates.mi, sim.mi);
    row("L_nr", rates.nr, sim.nr);
    row("L_rejoined", rates.rejoined, sim.rejoined);
    row("L_rb", rates.rb, sim.rb);
    row("L_NS", rates.ns, sim.ns);
    row("Phi", pb.amortized, sim.profit);
    if (have_mean && sc.replacement_samples > 0) row("mean_replacement", mean, sim.first_replacement);
    for (int kk = 1; kk <= model.n; ++kk) row("pi_U" + std::to_string(kk), st.level_mass[kk], sim.level_occupancy[kk]);

    fs::path dir(out);
    atomic_write(dir / "sim_report.csv", sim_csv(sim, model.n));
    atomic_write(dir / "comparison.csv", cmp.str());
    if (!trace.empty()) atomic_write(trace, sim.trace);
    std::cout << cmp.str();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cold-standby MMAP model: measures, vacation-policy sweeps and simulation"};
    app.require_subcommand(1);

    std::string config, out = ".", layout_csv, kernel_csv;
    auto* validate = app.add_subcommand("validate", "check a config and print the state-space layout");
    validate->add_option("config", config, "model config (JSON)")->required();
    validate->add_option("--layout-csv", layout_csv, "write the layout as CSV");
    validate->add_option("--kernel-csv", kernel_csv, "write every event matrix as label,row,col,value");

    int horizon = 2000;
    auto* measures = app.add_subcommand("measures", "transient and stationary measures, profits");
    measures->add_option("config", config)->required();
    measures->add_option("--horizon", horizon, "transient horizon in steps")->check(CLI::NonNegativeNumber);
    measures->add_option("--out", out, "output directory");

    std::string family = "geometric", grid = "0.05:0.95:0.05", refine, Rs, pm = "on", sweep_out;
    auto* optimize = app.add_subcommand("optimize", "sweep vacation parameters and R");
    optimize->add_option("config", config)->required();
    optimize->add_option("--family", family, "geometric | erlang2");
    optimize->add_option("--grid", grid, "lo:hi:step, or one value");
    optimize->add_option("--refine", refine, "refinement step around the coarse optimum");
    optimize->add_option("--R", Rs, "lo:hi, or one value (default 1:n)");
    optimize->add_option("--pm", pm, "preventive maintenance on | off");
    optimize->add_option("--out", sweep_out, "sweep CSV path");

    SimConfig sc;
    std::string trace;
    long long steps = sc.steps, warmup = sc.warmup;
    unsigned long long seed = sc.seed;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo run compared against the analytic values");
    simulate_cmd->add_option("config", config)->required();
    simulate_cmd->add_option("--steps", steps, "steps per replication");
    simulate_cmd->add_option("--reps", sc.replications, "replications");
    simulate_cmd->add_option("--warmup", warmup, "discarded initial steps");
    simulate_cmd->add_option("--seed", seed, "master seed");
    simulate_cmd->add_option("--replacement-samples", sc.replacement_samples, "first-replacement runs per replication");
    simulate_cmd->add_option("--out", out, "output directory");
    simulate_cmd->add_option("--trace", trace, "per-step trace CSV of replication 0");
    simulate_cmd->add_option("--trace-steps", sc.trace_steps, "trace length (default 1000 with --trace)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kConfig;
    }

    try {
        if (*validate) return cmd_validate(config, layout_csv, kernel_csv);
        if (*measures) return cmd_measures(config, horizon, out);
        if (*optimize) return cmd_optimize(config, family, grid, refine, Rs, pm, sweep_out);
        if (*simulate_cmd) {
            sc.steps = steps;
            sc.warmup = warmup;
            sc.seed = seed;
            if (!trace.empty() && sc.trace_steps == 0) sc.trace_steps = 1000;
            return cmd_simulate(config, sc, out, trace);
        }
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCompute;
    }
    return kOk;
}
