#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "standby/economics.hpp"

namespace standby {

struct SimConfig {
    long long steps = 1'000'000;   // per replication, warmup included
    int replications = 20;
    long long warmup = 10'000;
    std::uint64_t seed = 20240601;
    // Extra independent runs from phi until the first NS event, per replication.
    int replacement_samples = 2000;
    int trace_steps = 0;  // per-step dump of replication 0
    bool parallel = true;

    void validate() const;
};

struct Estimate {
    double mean = 0.0;
    double se = 0.0;
};

struct SimReport {
    Estimate A;
    Estimate workplace, vacation, working, idle;
    std::array<Estimate, kLabelCount> label_rate;
    Estimate rep, mi, nr, rejoined, rb, ns;
    Estimate profit;  // per-step net profit, all costs included
    std::map<BlockId, Estimate> block_occupancy;
    std::vector<Estimate> level_occupancy;  // indexed by k
    Estimate first_replacement;
    std::string trace;
};

SimReport simulate(const SystemModel& model, const EconomicParams& params, const SimConfig& cfg);

// Mean absorption time of a PH from direct sampling.
Estimate sample_ph_mean(const DiscretePH& ph, long long samples, std::uint64_t seed);

std::string sim_csv(const SimReport& report, int n);

}  // namespace standby
