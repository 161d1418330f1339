#include "standby/optimizer.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "standby/kernels.hpp"
#include "standby/report.hpp"

namespace standby {

namespace {

// Grid points are snapped to 1e-9 so 0.05 * 14 prints and compares as 0.7.
double snap(double x) { return std::round(x * 1e9) / 1e9; }

SweepRow pending(std::vector<double> params, int R, bool refined) {
    SweepRow row;
    row.params = std::move(params);
    row.R = R;
    row.refined = refined;
    return row;
}

bool params_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<double> Grid::values() const {
    if (!(step > 0.0)) throw Error(ErrorCode::ConfigInvalid, "grid step must be positive");
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) out.push_back(snap(lo + static_cast<double>(i) * step));
    return out;
}

void SweepSpec::validate(int n) const {
    for (double v : grid.values())
        if (!(v > 0.0 && v < 1.0)) throw Error(ErrorCode::ConfigInvalid, "grid values must lie in (0,1)");
    if (R_lo < 1 || R_hi > n || R_lo > R_hi) throw Error(ErrorCode::ConfigInvalid, "R range must lie within 1..n");
    if (refine_step && !(*refine_step > 0.0)) throw Error(ErrorCode::ConfigInvalid, "refine step must be positive");
}

DiscretePH vacation_for(VacationFamily family, const std::vector<double>& p) {
    return family == VacationFamily::Geometric ? geometric_ph(p.at(0)) : generalized_erlang2_ph(p.at(0), p.at(1));
}

SweepRow evaluate(const SystemModel& model, const EconomicParams& params) {
    SweepRow row;
    row.R = model.R;
    try {
        MarkedKernel k = build(model);
        RowVector phi = initial_distribution(model, k.layout);
        StationaryResult st = stationary(k, phi, 1e-10, false);
        row.rates = event_rates(k, st.pi);
        row.A = availability(k.layout, st.pi);
        CostVectors cv = build_vectors(model, k.layout, params);
        row.phi = profits(cv, st.pi, row.rates, params, model.n).amortized;
        row.feasible = true;
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

namespace {

void run_rows(const SystemModel& base, const EconomicParams& params, const SweepSpec& spec,
              std::vector<SweepRow>& rows) {
    const long count = static_cast<long>(rows.size());
    auto one = [&](long i) {
        SystemModel m = base;
        m.R = rows[i].R;
        m.vacation = vacation_for(spec.family, rows[i].params);
        if (!spec.pm) m.unit = without_inspections(m.unit);
        SweepRow r = evaluate(m, params);
        r.params = rows[i].params;
        r.refined = rows[i].refined;
        rows[i] = std::move(r);
    };
    if (spec.parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(kernels::worker_count())
        for (long i = 0; i < count; ++i) one(i);
    } else {
        for (long i = 0; i < count; ++i) one(i);
    }
}

std::optional<std::size_t> pick(const std::vector<SweepRow>& rows, int* ties) {
    std::optional<std::size_t> best;
    *ties = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& r = rows[i];
        if (!r.feasible) continue;
        if (!best) { best = i; continue; }
        const SweepRow& b = rows[*best];
        if (r.phi > b.phi) { best = i; *ties = 0; continue; }
        if (r.phi == b.phi) {
            ++*ties;
            if (r.R < b.R || (r.R == b.R && params_less(r.params, b.params))) best = i;
        }
    }
    return best;
}

std::vector<std::vector<double>> points(VacationFamily family, const std::vector<double>& a,
                                        const std::vector<double>& b) {
    std::vector<std::vector<double>> out;
    if (family == VacationFamily::Geometric) {
        for (double x : a) out.push_back({x});
    } else {
        for (double x : a)
            for (double y : b) out.push_back({x, y});
    }
    return out;
}

}  // namespace

SweepResult sweep(const SystemModel& base, const EconomicParams& params, const SweepSpec& spec) {
    spec.validate(base.n);
    SweepResult res;
    const auto coarse = spec.grid.values();
    for (int R = spec.R_lo; R <= spec.R_hi; ++R)
        for (auto& p : points(spec.family, coarse, coarse)) res.rows.push_back(pending(p, R, false));
    run_rows(base, params, spec, res.rows);
    res.argmax = pick(res.rows, &res.ties);

    if (spec.refine_step && res.argmax) {
        const SweepRow centre = res.rows[*res.argmax];
        const double st = *spec.refine_step;
        std::vector<std::vector<double>> axes;
        for (double c : centre.params) {
            Grid g{std::max(snap(c - spec.refine_window), st), std::min(snap(c + spec.refine_window), 1.0 - st), st};
            axes.push_back(g.values());
        }
        const auto& ax1 = axes[0];
        const auto& ax2 = axes.size() > 1 ? axes[1] : axes[0];
        std::vector<SweepRow> extra;
        const int R = centre.R;
        for (auto& p : points(spec.family, ax1, ax2)) {
            bool seen = false;
            for (const SweepRow& r : res.rows)
                if (r.R == R && r.params == p) { seen = true; break; }
            if (!seen) extra.push_back(pending(p, R, true));
        }
        run_rows(base, params, spec, extra);
        for (auto& r : extra) res.rows.push_back(std::move(r));
        res.argmax = pick(res.rows, &res.ties);
    }
    if (!res.argmax) throw Error(ErrorCode::InfeasiblePoint, "no feasible point in the sweep");
    return res;
}

std::string sweep_csv(const SweepResult& result, VacationFamily family) {
    std::ostringstream os;
    os << (family == VacationFamily::Geometric ? "p" : "p1,p2")
       << ",R,refined,feasible,Phi,A,L_rep,L_mi,L_nr,L_rb,L_NS,error\n";
    for (const SweepRow& r : result.rows) {
        for (double p : r.params) os << fmt_num(p) << ',';
        os << r.R << ',' << (r.refined ? 1 : 0) << ',' << (r.feasible ? 1 : 0) << ',';
        if (r.feasible) {
            os << fmt_num(r.phi) << ',' << fmt_num(r.A) << ',' << fmt_num(r.rates.rep) << ',' << fmt_num(r.rates.mi)
               << ',' << fmt_num(r.rates.nr) << ',' << fmt_num(r.rates.rb) << ',' << fmt_num(r.rates.ns) << ",\n";
        } else {
            os << ",,,,,,,\"" << r.error << "\"\n";
        }
    }
    return os.str();
}

std::string argmax_line(const SweepResult& result, VacationFamily family) {
    if (!result.argmax) return "no feasible point";
    const SweepRow& r = result.rows[*result.argmax];
    char buf[128];
    if (family == VacationFamily::Geometric)
        std::snprintf(buf, sizeof buf, "p=%.2f R=%d", r.params[0], r.R);
    else
        std::snprintf(buf, sizeof buf, "p1=%.2f p2=%.2f R=%d", r.params[0], r.params[1], r.R);
    return buf;
}

}  // namespace standby
