#include <doctest.h>

#include <random>

#include "standby/measures.hpp"
#include "support.hpp"

using namespace standby;

namespace {

struct Solved {
    SystemModel model;
    MarkedKernel kernel;
    RowVector phi;
    StationaryResult st;
};

Solved solve(const SystemModel& m) {
    MarkedKernel k = build(m);
    RowVector phi = initial_distribution(m, k.layout);
    StationaryResult st = stationary(k, phi);
    return {m, std::move(k), phi, std::move(st)};
}

const Solved& example() {
    static const Solved s = solve(support::example().model);
    return s;
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("initial distribution starts all units fresh with the repairperson away") {
    const Solved& s = example();
    CHECK(s.phi.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.phi.minCoeff() >= 0.0);
    const Block& b = s.kernel.layout.block({4, 0, Mode::Vacation});
    CHECK(s.phi.segment(b.offset, b.dim).sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("transient path keeps probability mass and converges") {
    const Solved& s = example();
    TransientPath tp = transient(s.kernel, s.phi, 2000);
    REQUIRE(tp.horizon() == 2000);
    CHECK((tp.p[0] - s.phi).cwiseAbs().maxCoeff() == 0.0);
    for (int v : {1, 10, 100, 1000, 2000}) CHECK(std::abs(tp.p[v].sum() - 1.0) <= 1e-12);
    CHECK((tp.p[2000] - s.st.pi).cwiseAbs().maxCoeff() <= 1e-6);
    auto A = availability(s.kernel.layout, tp);
    CHECK(A[0] == 1.0);
    CHECK(A[2000] == doctest::Approx(availability(s.kernel.layout, s.st.pi)).epsilon(1e-6));
    CHECK_THROWS_AS(transient(s.kernel, s.phi, -1), Error);
}

TEST_CASE("stationary solution of the example") {
    const Solved& s = example();
    CHECK(s.st.recursion_used);
    CHECK(s.st.recursion_direct_gap <= 1e-10);
    CHECK(s.st.balance_residual <= 1e-12);
    CHECK(s.st.pi.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.st.pi.minCoeff() >= 0.0);
    const double want[] = {0.304267, 0.241134, 0.230574, 0.224025};
    for (int k = 1; k <= 4; ++k) CHECK(s.st.level_mass[k] == doctest::Approx(want[k - 1]).epsilon(1e-5));
    CHECK(availability(s.kernel.layout, s.st.pi) == doctest::Approx(0.877191).epsilon(1e-5));
}

TEST_CASE("recursion matches the direct solve on random models") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 25; ++rep) {
        SystemModel m = support::random_model(rng, 4, 3);
        Solved s = solve(m);
        CHECK(s.st.recursion_used);
        CHECK(s.st.recursion_direct_gap <= 1e-10);
        CHECK(s.st.balance_residual <= 1e-12);
    }
}

TEST_CASE("repairperson proportions") {
    const Solved& s = example();
    auto u = repairperson_proportions(s.kernel.layout, s.st.pi);
    CHECK(u.workplace == doctest::Approx(0.680576).epsilon(1e-5));
    CHECK(u.vacation == doctest::Approx(0.319424).epsilon(1e-5));
    CHECK(u.working == doctest::Approx(0.313872).epsilon(1e-5));
    CHECK(u.idle == doctest::Approx(0.366704).epsilon(1e-5));
    CHECK(u.workplace + u.vacation == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(u.working + u.idle == doctest::Approx(u.workplace).epsilon(1e-14));
}

TEST_CASE("mean times add up to the horizon") {
    const Solved& s = example();
    TransientPath tp = transient(s.kernel, s.phi, 50);
    MeanTimes mt = mean_times(s.kernel.layout, tp, 50);
    double total = 0.0;
    for (int k = 1; k <= 4; ++k) total += mt.per_level[k];
    CHECK(total == doctest::Approx(51.0).epsilon(1e-12));
    double ops = 0.0;
    for (const RowVector& p : tp.p) ops += availability(s.kernel.layout, p);
    CHECK(mt.operational == doctest::Approx(ops).epsilon(1e-12));
    MeanTimes st = mean_times(s.kernel.layout, s.st.pi);
    CHECK(st.operational == doctest::Approx(availability(s.kernel.layout, s.st.pi)).epsilon(1e-12));
}

TEST_CASE("event rates and counts") {
    const Solved& s = example();
    EventRates r = event_rates(s.kernel, s.st.pi);
    CHECK(r.rep == doctest::Approx(0.040853).epsilon(1e-4));
    CHECK(r.mi == doctest::Approx(0.004936).epsilon(1e-4));
    CHECK(r.ns == doctest::Approx(0.005787).epsilon(1e-4));
    CHECK(r.rb == doctest::Approx(0.054872).epsilon(1e-4));
    CHECK(r.rejoined <= r.rb + 1e-15);
    double total = 0.0;
    for (double x : r.by_label) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    TransientPath tp = transient(s.kernel, s.phi, 3000);
    auto counts = event_counts(s.kernel, tp);
    CHECK(counts[0].ns == 0.0);
    // Long-run slope of the counts is the stationary rate.
    double slope = (counts[3000].rep - counts[2000].rep) / 1000.0;
    CHECK(slope == doctest::Approx(r.rep).epsilon(1e-6));
}

TEST_CASE("replacement time") {
    const Solved& s = example();
    ReplacementTime rt = replacement_time(s.kernel, s.phi, 400);
    CHECK(rt.reliability[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t v = 1; v < rt.reliability.size(); ++v) CHECK(rt.reliability[v] <= rt.reliability[v - 1] + 1e-15);
    CHECK(rt.mean == doctest::Approx(172.2534).epsilon(1e-6));
    // Mean from the survival function: sum of R(v).
    ReplacementTime long_rt = replacement_time(s.kernel, s.phi, 20000);
    double tail_sum = 0.0;
    for (double x : long_rt.reliability) tail_sum += x;
    CHECK(tail_sum == doctest::Approx(rt.mean).epsilon(1e-8));
}

TEST_CASE("failure-free system is always available") {
    Solved s = solve(support::failure_free(support::example().model));
    CHECK(!s.st.recursion_used);
    CHECK(!s.st.note.empty());
    CHECK(availability(s.kernel.layout, s.st.pi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.st.level_mass[4] == doctest::Approx(1.0).epsilon(1e-12));
    auto u = repairperson_proportions(s.kernel.layout, s.st.pi);
    CHECK(u.vacation == doctest::Approx(1.0).epsilon(1e-12));
    EventRates r = event_rates(s.kernel, s.st.pi);
    // The repairperson keeps coming back and leaving again: one return per vacation.
    CHECK(r.rb == doctest::Approx(1.0 / ph_mean(s.model.vacation)).epsilon(1e-10));
    CHECK(r.ns == 0.0);
    CHECK_THROWS_AS(replacement_time(s.kernel, s.phi, 10), Error);
}

TEST_CASE("certain fatal shocks cycle through the levels") {
    Solved s = solve(support::certain_shock(support::example().model));
    for (int k = 1; k <= 4; ++k) CHECK(s.st.level_mass[k] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(availability(s.kernel.layout, s.st.pi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(event_rates(s.kernel, s.st.pi).ns == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(replacement_time(s.kernel, s.phi, 10).mean == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("report keys") {
    const Solved& s = example();
    MeasureReport r = measure_report(s.kernel, s.st, 172.2534);
    std::string text = report_text(r, 4), csv = report_csv(r, 4);
    for (const char* key : {"A=", "Y_nv=", "Y_v=", "Y_w=", "Y_i=", "L_rep=", "L_NS=", "L_rb=", "mean_replacement=", "pi_U4="})
        CHECK(text.find(key) != std::string::npos);
    CHECK(csv.find("pi_U1,") != std::string::npos);
}

}
