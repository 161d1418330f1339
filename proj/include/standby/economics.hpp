#pragma once

#include "standby/measures.hpp"

namespace standby {

struct EconomicParams {
    double B = 0;   // gross profit per step while operational
    Vector c0;      // operating cost per internal phase
    Vector cr1;     // corrective repair cost per repair phase
    Vector cr2;     // preventive maintenance cost per phase
    double H = 0;   // idle repairperson at the workplace, per step
    double C = 0;   // loss per step with the system down
    double G = 0;   // per repairperson return from vacation
    double fcr = 0, fmi = 0, fnu = 0;

    void validate(const SystemModel& model) const;
};

// mc_cr carries the corrective costs plus the idle cost H; mc_pm carries only
// preventive costs, so mc_cr + mc_pm = nc and H is charged once.
struct CostVectors {
    Vector nr, nc, mc_cr, mc_pm;
    Vector c() const { return nr - nc; }
};

CostVectors build_vectors(const SystemModel& model, const StateSpaceLayout& layout, const EconomicParams& params);

struct ProfitBreakdown {
    double phi_w = 0, phi_cr = 0, phi_pm = 0;
    double rep_cost = 0, mi_cost = 0, return_cost = 0, ns_cost = 0, purchase = 0;
    double total = 0;      // printed formula, with (1 + Lambda^NS) n fnu
    double amortized = 0;  // the constant purchase dropped; the long-run per-step profit
};

ProfitBreakdown profits(const CostVectors& cv, const RowVector& pi, const EventRates& rates,
                        const EconomicParams& params, int n);
// Cumulative profit up to step v (sums p^0..p^v, event counts Lambda(v)).
ProfitBreakdown profits(const CostVectors& cv, const TransientPath& path, const std::vector<EventRates>& counts,
                        const EconomicParams& params, int n, int v);

std::string profit_csv(const ProfitBreakdown& p);

}  // namespace standby
