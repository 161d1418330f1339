#pragma once

#include <random>
#include <string>

#include "standby/config.hpp"

namespace support {

std::string config_path(const std::string& name);
standby::ModelConfig example();
standby::ModelConfig ref_without_inspection();
standby::ModelConfig toy();

// Random valid model with n <= max_n and every factor order <= max_dim
// (internal order at least 2 so that minor and major states both exist).
standby::SystemModel random_model(std::mt19937_64& rng, int max_n = 3, int max_dim = 3);
standby::EconomicParams random_params(std::mt19937_64& rng, const standby::SystemModel& model);

// Rows scaled to keep at least `min_exit` of mass outside; some entries zeroed.
standby::Matrix random_substochastic(std::mt19937_64& rng, int n, double min_exit, double max_exit);
standby::RowVector random_probability(std::mt19937_64& rng, int n);

// No unit ever fails or is inspected: the system stays at n units forever.
standby::SystemModel failure_free(standby::SystemModel model);
// A shock every step and every shock destroys the online unit.
standby::SystemModel certain_shock(standby::SystemModel model);

}  // namespace support
