#include "standby/economics.hpp"

#include <sstream>

#include "standby/report.hpp"

namespace standby {

void EconomicParams::validate(const SystemModel& model) const {
    auto need = [](const Vector& v, Index len, const char* name) {
        if (v.size() != len)
            throw Error(ErrorCode::DimensionMismatch, std::string("economics.") + name + ": expected length " +
                                                          std::to_string(len) + ", got " + std::to_string(v.size()));
        for (Index i = 0; i < v.size(); ++i)
            if (v(i) < 0.0)
                throw Error(ErrorCode::NegativeEntry,
                            std::string("economics.") + name + " entry " + std::to_string(i + 1) + " is negative");
    };
    need(c0, model.unit.m(), "c0");
    need(cr1, model.repair.order(), "cr1");
    need(cr2, model.maintenance.order(), "cr2");
    const std::pair<const char*, double> scalars[] = {{"B", B},     {"H", H},     {"C", C},    {"G", G},
                                                      {"fcr", fcr}, {"fmi", fmi}, {"fnu", fnu}};
    for (const auto& [name, v] : scalars)
        if (!(v >= 0.0)) throw Error(ErrorCode::NegativeEntry, std::string("economics.") + name + " is negative");
}

CostVectors build_vectors(const SystemModel& model, const StateSpaceLayout& layout, const EconomicParams& params) {
    params.validate(model);
    const FactorDims& d = layout.dims();
    const Index n = layout.size();
    CostVectors cv{Vector::Zero(n), Vector::Zero(n), Vector::Zero(n), Vector::Zero(n)};
    const Index per_internal = d.t * d.eps;
    for (const Block& b : layout.blocks()) {
        const bool up = b.id.s < b.id.k;
        for (const QueueSlot& sl : b.slots) {
            for (Index x = 0; x < sl.dim; ++x) {
                const Index idx = sl.offset + x;
                const Index unit = x / sl.aux_dim, aux = x % sl.aux_dim;
                cv.nr(idx) = up ? params.B - params.c0(unit / per_internal) : -params.C;
                if (b.id.mode == Mode::Vacation) continue;
                if (b.id.s == 0) {
                    cv.nc(idx) = cv.mc_cr(idx) = params.H;
                } else if (sl.queue.front() == Task::Corrective) {
                    cv.nc(idx) = cv.mc_cr(idx) = params.cr1(aux);
                } else {
                    cv.nc(idx) = cv.mc_pm(idx) = params.cr2(aux);
                }
            }
        }
    }
    return cv;
}

namespace {

void finish(ProfitBreakdown& p, const EventRates& r, const EconomicParams& params, int n) {
    p.rep_cost = r.rep * params.fcr;
    p.mi_cost = r.mi * params.fmi;
    p.return_cost = r.rb * params.G;
    p.ns_cost = r.ns * n * params.fnu;
    p.purchase = n * params.fnu;
    p.amortized = p.phi_w - p.phi_cr - p.phi_pm - p.ns_cost - p.rep_cost - p.mi_cost - p.return_cost;
    p.total = p.amortized - p.purchase;
}

}  // namespace

ProfitBreakdown profits(const CostVectors& cv, const RowVector& pi, const EventRates& rates,
                        const EconomicParams& params, int n) {
    ProfitBreakdown p;
    p.phi_w = pi.dot(cv.nr);
    p.phi_cr = pi.dot(cv.mc_cr);
    p.phi_pm = pi.dot(cv.mc_pm);
    finish(p, rates, params, n);
    return p;
}

ProfitBreakdown profits(const CostVectors& cv, const TransientPath& path, const std::vector<EventRates>& counts,
                        const EconomicParams& params, int n, int v) {
    ProfitBreakdown p;
    for (int m = 0; m <= v; ++m) {
        p.phi_w += path.p[m].dot(cv.nr);
        p.phi_cr += path.p[m].dot(cv.mc_cr);
        p.phi_pm += path.p[m].dot(cv.mc_pm);
    }
    finish(p, counts[v], params, n);
    return p;
}

std::string profit_csv(const ProfitBreakdown& p) {
    std::ostringstream os;
    os << "term,value\n"
       << "Phi_w," << fmt_num(p.phi_w) << '\n'
       << "Phi_cr," << fmt_num(p.phi_cr) << '\n'
       << "Phi_pm," << fmt_num(p.phi_pm) << '\n'
       << "repairable_failures_fcr," << fmt_num(p.rep_cost) << '\n'
       << "major_inspections_fmi," << fmt_num(p.mi_cost) << '\n'
       << "returns_G," << fmt_num(p.return_cost) << '\n'
       << "new_systems_n_fnu," << fmt_num(p.ns_cost) << '\n'
       << "initial_purchase_n_fnu," << fmt_num(p.purchase) << '\n'
       << "Phi," << fmt_num(p.total) << '\n'
       << "Phi_amortized," << fmt_num(p.amortized) << '\n';
    return os.str();
}

}  // namespace standby
