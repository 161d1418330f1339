#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "standby/mmap.hpp"

namespace standby {

RowVector initial_distribution(const SystemModel& model, const StateSpaceLayout& layout);

struct TransientPath {
    std::vector<RowVector> p;  // p[0] = phi
    double convergence = 0.0;  // |p^h D - p^h|_inf
    int horizon() const { return static_cast<int>(p.size()) - 1; }
};

TransientPath transient(const MarkedKernel& kernel, const RowVector& phi, int horizon);

struct StationaryResult {
    RowVector pi;
    std::vector<double> level_mass;          // indexed by k (entry 0 unused)
    std::map<BlockId, double> block_mass;
    double balance_residual = 0.0;           // |pi D - pi|_inf
    double recursion_direct_gap = 0.0;       // |pi_rec - pi_direct|_inf
    bool recursion_used = false;
    Index reachable = 0;
    std::string note;
};

// Censoring recursion over the levels U^n..U^1 checked against a direct
// solve on the states reachable from phi. When a level can never be left
// (no loss of units at all) the recursion does not exist and the direct
// solution is returned with a note. cross_check=false skips the direct solve
// when the recursion succeeds (sweeps evaluate thousands of points).
StationaryResult stationary(const MarkedKernel& kernel, const RowVector& phi, double agreement_tol = 1e-10,
                            bool cross_check = true);
RowVector stationary_direct(const MarkedKernel& kernel, const RowVector& phi, Index* reachable = nullptr);
std::optional<RowVector> stationary_recursion(const MarkedKernel& kernel);

std::map<BlockId, double> block_masses(const StateSpaceLayout& layout, const RowVector& dist);
std::vector<double> level_masses(const StateSpaceLayout& layout, const RowVector& dist);

double availability(const StateSpaceLayout& layout, const RowVector& dist);
std::vector<double> availability(const StateSpaceLayout& layout, const TransientPath& path);

struct RepairpersonProportions {
    double workplace = 0, vacation = 0, working = 0, idle = 0;
    double working_fraction() const { return workplace > 0 ? working / workplace : 0.0; }
};
RepairpersonProportions repairperson_proportions(const StateSpaceLayout& layout, const RowVector& pi);

struct MeanTimes {
    std::map<BlockId, double> per_block;
    std::vector<double> per_level;  // indexed by k
    double operational = 0.0;
};
MeanTimes mean_times(const StateSpaceLayout& layout, const RowVector& pi);
// Cumulative over p^0..p^v.
MeanTimes mean_times(const StateSpaceLayout& layout, const TransientPath& path, int v);

struct ReplacementTime {
    std::vector<double> reliability;  // R(0..h)
    double mean = 0.0;
};
ReplacementTime replacement_time(const MarkedKernel& kernel, const RowVector& phi, int horizon);

struct EventRates {
    std::array<double, kLabelCount> by_label{};
    double rep = 0, mi = 0, nr = 0, rejoined = 0, rb = 0, ns = 0;
    double operator[](Label y) const { return by_label[static_cast<int>(y)]; }
};
EventRates event_rates(const MarkedKernel& kernel, const RowVector& pi);
// Lambda(v) for v = 0..h
std::vector<EventRates> event_counts(const MarkedKernel& kernel, const TransientPath& path);

struct MeasureReport {
    double A = 0;
    RepairpersonProportions upsilon;
    EventRates rates;
    double mean_replacement = 0;
    std::vector<double> pi_level;  // indexed by k
};
MeasureReport measure_report(const MarkedKernel& kernel, const StationaryResult& st, double mean_replacement);

// Flat key=value report and the same data as a two-column CSV.
std::string report_text(const MeasureReport& r, int n);
std::string report_csv(const MeasureReport& r, int n);

}  // namespace standby
