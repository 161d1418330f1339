#include <doctest.h>

#include <random>

#include "standby/ph.hpp"
#include "support.hpp"

using namespace standby;

TEST_SUITE("ph") {

TEST_CASE("validation verdicts") {
    CHECK(validate_ph({RowVector::Ones(1), Matrix::Zero(1, 1)}).ok());
    auto cfg = support::example();
    CHECK(validate_ph(cfg.model.repair).ok());

    auto v = validate_ph({RowVector::Ones(1), Matrix::Ones(1, 1)});
    REQUIRE_FALSE(v.ok());
    CHECK(*v.violation == ErrorCode::NotAbsorbing);

    Matrix S(2, 2);
    S << 0.5, -0.1, 0.2, 0.3;
    CHECK(*validate_ph({RowVector::Constant(2, 0.5), S}).violation == ErrorCode::NegativeEntry);
    S << 0.7, 0.4, 0.2, 0.3;
    CHECK(*validate_ph({RowVector::Constant(2, 0.5), S}).violation == ErrorCode::RowSumExceedsOne);
    S << 0.5, 0.4, 0.2, 0.3;
    CHECK(*validate_ph({RowVector::Constant(2, 0.4), S}).violation == ErrorCode::InitialMassNotOne);
    CHECK(*validate_ph({RowVector::Ones(3) / 3.0, S}).violation == ErrorCode::DimensionMismatch);

    // A closed pair of phases that never exits, even though another phase does.
    Matrix S3(3, 3);
    S3 << 0.5, 0.5, 0, 0.5, 0.5, 0, 0, 0, 0.5;
    CHECK(*validate_ph({RowVector::Ones(3) / 3.0, S3}).violation == ErrorCode::NotAbsorbing);
}

TEST_CASE("means of the repair, maintenance and shock representations") {
    auto cfg = support::example();
    CHECK(std::abs(ph_mean(cfg.model.repair) - 7.3810) <= 1e-4);
    CHECK(std::abs(ph_mean(cfg.model.maintenance) - 2.5) <= 1e-4);
    CHECK(std::abs(ph_mean(cfg.model.unit.shock) - 11.0) <= 1e-4);
    CHECK(ph_mean({RowVector::Ones(1), Matrix::Zero(1, 1)}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ph_mean({RowVector::Ones(1), Matrix::Ones(1, 1)}), Error);
}

TEST_CASE("geometric mean is 1/(1-p)") {
    for (double p : {0.05, 0.5, 0.8, 0.95}) CHECK(ph_mean(geometric_ph(p)) == doctest::Approx(1.0 / (1.0 - p)));
    // Two geometric stages in series.
    DiscretePH e = generalized_erlang2_ph(0.6, 0.3);
    CHECK(ph_mean(e) == doctest::Approx(1.0 / 0.4 + 1.0 / 0.7));
}

TEST_CASE("renewal stationary vector") {
    CHECK(renewal_stationary({RowVector::Ones(1), Matrix::Constant(1, 1, 0.4)})(0) == doctest::Approx(1.0));

    auto cfg = support::example();
    const DiscretePH& sh = cfg.model.unit.shock;
    RowVector x = renewal_stationary(sh);
    // Power iteration on L + L^0 gamma, written out for the 2x2 case.
    const Matrix& L = sh.S;
    double l0a = 1 - L(0, 0) - L(0, 1), l0b = 1 - L(1, 0) - L(1, 1);
    double P[2][2] = {{L(0, 0) + l0a * sh.alpha(0), L(0, 1) + l0a * sh.alpha(1)},
                      {L(1, 0) + l0b * sh.alpha(0), L(1, 1) + l0b * sh.alpha(1)}};
    double y[2] = {0.5, 0.5};
    for (int it = 0; it < 100000; ++it) {
        double a = y[0] * P[0][0] + y[1] * P[1][0], b = y[0] * P[0][1] + y[1] * P[1][1];
        bool done = std::abs(a - y[0]) < 1e-16 && std::abs(b - y[1]) < 1e-16;
        y[0] = a, y[1] = b;
        if (done) break;
    }
    CHECK(x(0) == doctest::Approx(y[0]).epsilon(1e-12));
    CHECK(x(1) == doctest::Approx(y[1]).epsilon(1e-12));

    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        int z = 1 + rep % 4;
        DiscretePH ph{support::random_probability(rng, z), support::random_substochastic(rng, z, 0.05, 0.5)};
        RowVector s = renewal_stationary(ph);
        Matrix P2 = ph.S + ph.exit() * ph.alpha;
        CHECK(s.sum() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(s.minCoeff() >= 0.0);
        CHECK((s * P2 - s).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("kron") {
    Matrix A(2, 2);
    A << 1, 2, 3, 4;
    CHECK(kron(Matrix::Identity(1, 1), A) == A);
    CHECK(kron(Matrix::Ones(2, 1), Matrix::Ones(3, 1)) == Matrix::Ones(6, 1));
    Matrix B(1, 2);
    B << 5, 6;
    Matrix K = kron(A, B);
    Matrix expected(2, 4);
    expected << 5, 6, 10, 12, 15, 18, 20, 24;
    CHECK(K == expected);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    auto rnd = [&](int r, int c) { return Matrix(Matrix::NullaryExpr(r, c, [&]() { return u(rng); })); };
    for (int rep = 0; rep < 10; ++rep) {
        Matrix a = rnd(2, 2), b = rnd(3, 3), c = rnd(2, 2), d = rnd(3, 3);
        // Both sides multiplied out independently.
        CHECK((kron(a, b) * kron(c, d) - kron(a * c, b * d)).cwiseAbs().maxCoeff() < 1e-12);
        Matrix x = rnd(2, 3), y = rnd(2, 1), z = rnd(1, 2);
        CHECK((kron(kron(x, y), z) - kron(x, kron(y, z))).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("exit vector") {
    CHECK(exit_vector(Matrix::Zero(2, 2)) == Vector::Ones(2));
    auto cfg = support::example();
    Vector e = exit_vector(cfg.model.unit.inspection.S);
    CHECK(e(0) == doctest::Approx(1 - 0.85 - 0.1).epsilon(1e-14));
    CHECK(e(1) == doctest::Approx(1 - 0.45 - 0.4).epsilon(1e-14));
    Matrix P(2, 2);
    P << 0.3, 0.7, 1.0, 0.0;
    CHECK(exit_vector(P).cwiseAbs().maxCoeff() == 0.0);
    P << 0.3, 0.8, 0.5, 0.0;
    CHECK_THROWS_AS(exit_vector(P), Error);
}

TEST_CASE("alpha e = 1 and S e + S^0 = e on valid inputs") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        int z = 1 + rep % 5;
        DiscretePH ph{support::random_probability(rng, z), support::random_substochastic(rng, z, 0.01, 0.9)};
        REQUIRE(validate_ph(ph).ok());
        CHECK(std::abs(ph.alpha.sum() - 1.0) <= 1e-14);
        CHECK((ph.S.rowwise().sum() + ph.exit() - Vector::Ones(z)).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

}
