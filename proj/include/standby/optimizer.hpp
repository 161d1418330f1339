#pragma once

#include <optional>
#include <string>
#include <vector>

#include "standby/economics.hpp"

namespace standby {

enum class VacationFamily { Geometric, Erlang2 };

struct Grid {
    double lo = 0.05, hi = 0.95, step = 0.05;
    std::vector<double> values() const;
};

struct SweepSpec {
    VacationFamily family = VacationFamily::Geometric;
    Grid grid;
    int R_lo = 1, R_hi = 1;
    bool pm = true;
    // Second pass on a finer grid around the coarse argmax, at its R.
    std::optional<double> refine_step;
    double refine_window = 0.1;
    bool parallel = true;

    void validate(int n) const;
};

struct SweepRow {
    std::vector<double> params;
    int R = 0;
    bool refined = false;
    bool feasible = false;
    double phi = 0, A = 0;
    EventRates rates;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::optional<std::size_t> argmax;
    int ties = 0;  // rows equal to the maximum that lost the tie-break
};

DiscretePH vacation_for(VacationFamily family, const std::vector<double>& params);

// Stationary profit and availability of one configuration; infeasible
// points come back with feasible = false and the error text.
SweepRow evaluate(const SystemModel& model, const EconomicParams& params);

SweepResult sweep(const SystemModel& base, const EconomicParams& params, const SweepSpec& spec);

std::string sweep_csv(const SweepResult& result, VacationFamily family);
std::string argmax_line(const SweepResult& result, VacationFamily family);

}  // namespace standby
