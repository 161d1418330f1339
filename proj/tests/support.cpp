#include "support.hpp"

using namespace standby;

namespace support {

std::string config_path(const std::string& name) { return std::string(STANDBY_CONFIG_DIR) + "/" + name; }

ModelConfig example() { return load_config(config_path("paper-example.json")); }
ModelConfig ref_without_inspection() { return load_config(config_path("paper-example-no-inspection.json")); }
ModelConfig toy() { return load_config(config_path("toy-n1.json")); }

namespace {

double unif(std::mt19937_64& rng, double a = 0.0, double b = 1.0) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

RowVector random_probability(std::mt19937_64& rng, int n) {
    RowVector p(n);
    for (int i = 0; i < n; ++i) p(i) = unif(rng) < 0.3 ? 0.0 : unif(rng, 0.1, 1.0);
    if (p.sum() == 0.0) p(0) = 1.0;
    return p / p.sum();
}

Matrix random_substochastic(std::mt19937_64& rng, int n, double min_exit, double max_exit) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        RowVector w = random_probability(rng, n);
        m.row(i) = w * (1.0 - unif(rng, min_exit, max_exit));
    }
    return m;
}

SystemModel random_model(std::mt19937_64& rng, int max_n, int max_dim) {
    SystemModel s;
    OnlineUnitModel& u = s.unit;
    const int m = pick(rng, 2, std::max(2, max_dim));
    auto with_exits = [&](Matrix& A, Vector& r0, Vector& nr0, double lo, double hi) {
        A = random_substochastic(rng, m, lo, hi);
        r0.resize(m);
        nr0.resize(m);
        for (int i = 0; i < m; ++i) {
            double out = 1.0 - A.row(i).sum();
            double share = unif(rng, 0.3, 0.9);
            r0(i) = out * share;
            nr0(i) = out - r0(i);
        }
    };
    u.alpha = random_probability(rng, m);
    with_exits(u.T, u.T_r0, u.T_nr0, 0.03, 0.25);
    u.m1 = pick(rng, 1, m - 1);
    with_exits(u.W, u.W_r0, u.W_nr0, 0.1, 0.6);
    u.omega0 = unif(rng, 0.0, 0.5);
    const int t = pick(rng, 1, max_dim), e = pick(rng, 1, max_dim);
    u.shock = {random_probability(rng, t), random_substochastic(rng, t, 0.1, 0.6)};
    u.inspection = {random_probability(rng, e), random_substochastic(rng, e, 0.05, 0.4)};
    const int z1 = pick(rng, 1, max_dim), z2 = pick(rng, 1, max_dim), v = pick(rng, 1, max_dim);
    s.repair = {random_probability(rng, z1), random_substochastic(rng, z1, 0.2, 0.7)};
    s.maintenance = {random_probability(rng, z2), random_substochastic(rng, z2, 0.2, 0.7)};
    s.vacation = {random_probability(rng, v), random_substochastic(rng, v, 0.1, 0.6)};
    s.n = pick(rng, 1, max_n);
    s.R = pick(rng, 1, s.n);
    s.validate();
    return s;
}

EconomicParams random_params(std::mt19937_64& rng, const SystemModel& model) {
    EconomicParams p;
    auto vec = [&](Index n, double lo, double hi) {
        Vector v(n);
        for (Index i = 0; i < n; ++i) v(i) = unif(rng, lo, hi);
        return v;
    };
    p.B = unif(rng, 20, 60);
    p.c0 = vec(model.unit.m(), 0, 15);
    p.cr1 = vec(model.repair.order(), 5, 20);
    p.cr2 = vec(model.maintenance.order(), 5, 20);
    p.H = unif(rng, 0, 10);
    p.C = unif(rng, 10, 50);
    p.G = unif(rng, 0, 20);
    p.fcr = unif(rng, 0, 10);
    p.fmi = unif(rng, 0, 10);
    p.fnu = unif(rng, 10, 100);
    return p;
}

SystemModel failure_free(SystemModel model) {
    OnlineUnitModel& u = model.unit;
    for (Index i = 0; i < u.m(); ++i) u.T(i, i) += u.T_r0(i) + u.T_nr0(i);
    u.T_r0.setZero();
    u.T_nr0.setZero();
    u.W = Matrix::Identity(u.m(), u.m());
    u.W_r0.setZero();
    u.W_nr0.setZero();
    u.omega0 = 0.0;
    u = without_inspections(u);
    model.validate();
    return model;
}

SystemModel certain_shock(SystemModel model) {
    model.unit.omega0 = 1.0;
    model.unit.shock.S.setZero();
    model.validate();
    return model;
}

}  // namespace support
