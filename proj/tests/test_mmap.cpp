#include <doctest.h>

#include <algorithm>
#include <random>

#include "standby/kernels.hpp"
#include "standby/mmap.hpp"
#include "support.hpp"

using namespace standby;

namespace {

struct Entry {
    MacroStateId from, to;
    double value;
};

template <class F>
void for_each_entry(const StateSpaceLayout& L, const SparseMatrix& m, F f) {
    for (Index r = 0; r < m.outerSize(); ++r) {
        MacroStateId from = L.unlocate(r).first;
        for (SparseMatrix::InnerIterator it(m, r); it; ++it) f(Entry{from, L.unlocate(it.col()).first, it.value()});
    }
}

void check_stochastic(const MarkedKernel& k) {
    Vector rs = kernels::row_sums_serial(k.D);
    CHECK((rs.array() - 1.0).abs().maxCoeff() <= 1e-12);
    Matrix D = Matrix(k.D);
    CHECK(D.minCoeff() >= 0.0);
    SparseMatrix sum = k[Label::O];
    for (Label y : kAllLabels)
        if (y != Label::O) sum += k[y];
    CHECK(Matrix(sum - k.D).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(Matrix(k.D - k.D_prime - k[Label::NS]).cwiseAbs().maxCoeff() <= 1e-15);
}

}  // namespace

TEST_SUITE("mmap") {

TEST_CASE("example kernel is stochastic with the expected size") {
    MarkedKernel k = build(support::example().model);
    CHECK(k.D.rows() == 1972);
    check_stochastic(k);
}

TEST_CASE("random models give stochastic kernels") {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        SystemModel s = support::random_model(rng, 4, 3);
        MarkedKernel k = build(s);
        check_stochastic(k);
    }
}

TEST_CASE("levels move by at most one unit") {
    const SystemModel s = support::example().model;
    MarkedKernel k = build(s);
    const int n = s.n;
    for (Label y : kAllLabels) {
        for_each_entry(k.layout, k[y], [&](const Entry& e) {
            if (y == Label::NS) {
                CHECK(e.from.k == 1);
                CHECK(e.to.block() == BlockId{n, 0, Mode::Vacation});
                return;
            }
            const bool loss = y == Label::C || y == Label::CD;
            CHECK(e.to.k == e.from.k - (loss ? 1 : 0));
            // Queue grows only at its tail and shrinks only at its head.
            CHECK(std::abs(e.to.s - e.from.s) <= 1);
            if (e.from.s == e.from.k && y == Label::O) CHECK(e.to.s <= e.from.s);
        });
    }
}

TEST_CASE("return labels and the return matrix") {
    const SystemModel s = support::example().model;
    MarkedKernel k = build(s);
    const auto& L = k.layout;
    for (Label y : {Label::D, Label::AD, Label::BD, Label::CD}) {
        CHECK(k[y].nonZeros() > 0);
        for_each_entry(L, k[y], [&](const Entry& e) {
            CHECK(e.from.mode == Mode::Vacation);
            CHECK(e.to.mode == Mode::Workplace);
        });
    }
    for (Label y : {Label::O, Label::A, Label::B}) {
        for_each_entry(L, k[y], [&](const Entry& e) {
            CHECK(!(e.from.mode == Mode::Vacation && e.to.mode == Mode::Workplace));
        });
    }
    // Every return starts from a vacation state and is part of D.
    for_each_entry(L, k.Q, [&](const Entry& e) { CHECK(e.from.mode == Mode::Vacation); });
    Matrix Q(k.Q), D(k.D);
    CHECK((D - Q).minCoeff() >= -1e-15);
    CHECK(Q.rowwise().sum().maxCoeff() <= 1.0 + 1e-12);
    // Every vacation to workplace move is a return.
    for (Index r = 0; r < D.rows(); ++r) {
        if (L.unlocate(r).first.mode != Mode::Vacation) continue;
        for (Index c = 0; c < D.cols(); ++c)
            if (L.unlocate(c).first.mode == Mode::Workplace) CHECK(std::abs(Q(r, c) - D(r, c)) <= 1e-15);
    }
    CHECK(Matrix(build_Q(s, L) - k.Q).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("losing a unit at the threshold ends the vacation") {
    const SystemModel s = support::example().model;
    MarkedKernel k = build(s);
    double forced = 0.0;
    for_each_entry(k.layout, k[Label::C], [&](const Entry& e) {
        if (e.from.mode == Mode::Vacation && e.from.k == s.R) {
            CHECK(e.to.mode == Mode::Workplace);
            CHECK(e.to.k == s.R - 1);
            forced += e.value;
        }
    });
    CHECK(forced > 0.0);
    // Above the threshold a loss leaves the repairperson on vacation.
    for_each_entry(k.layout, k[Label::C], [&](const Entry& e) {
        if (e.from.mode == Mode::Vacation && e.from.k > s.R) CHECK(e.to.mode == Mode::Vacation);
    });
}

TEST_CASE("toy model entries by hand") {
    const SystemModel s = support::toy().model;
    MarkedKernel k = build(s);
    const auto& L = k.layout;
    REQUIRE(L.size() == 6);
    const Index v0 = L.locate({1, 0, Mode::Vacation, {}}, Phase{0, 0, 0, 0});
    // Non-repairable loss without a shock, after a survived shock, or by a fatal shock.
    const double hc = 0.04 * 0.8 + (0.04 + 0.85 * 0.2 + 0.05 * 0.2) * 0.75 * 0.2 + 0.25 * 0.2;
    CHECK(k[Label::NS].coeff(v0, v0) == doctest::Approx(hc).epsilon(1e-14));
    // A return that finds nothing to do leaves again: those steps count as returns too.
    const double ho = 0.85 * 0.8 + 0.85 * 0.4 * 0.75 * 0.2;
    CHECK(k[Label::O].coeff(v0, v0) == doctest::Approx(ho).epsilon(1e-14));
    CHECK(k.Q.coeff(v0, v0) == doctest::Approx((ho + hc) * 0.3).epsilon(1e-14));
    // Repairable failure while on vacation: unit waits, the return moves to the workplace.
    const Index vc = L.locate({1, 1, Mode::Vacation, {Task::Corrective}}, Phase{-1, 0, -1, 0});
    const Index wc = L.locate({1, 1, Mode::Workplace, {Task::Corrective}}, Phase{-1, 0, -1, 0});
    const double ha = 0.06 * 0.8 + (0.06 + 0.85 * 0.3 + 0.05 * 0.3) * 0.75 * 0.2;
    CHECK(k[Label::A].coeff(v0, vc) == doctest::Approx(ha * 0.7).epsilon(1e-14));
    CHECK(k[Label::AD].coeff(v0, wc) == doctest::Approx(ha * 0.3).epsilon(1e-14));
    // Repair completes: a fresh unit comes online and the repairperson leaves.
    CHECK(k[Label::O].coeff(wc, v0) == doctest::Approx(0.4 * 1.0).epsilon(1e-14));
    CHECK(k[Label::O].coeff(wc, wc) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(k.Q.row(wc).sum() == 0.0);
}

TEST_CASE("layout mismatch is rejected") {
    const SystemModel s = support::example().model;
    StateSpaceLayout other(s.n, s.R - 1, s.dims());
    CHECK_THROWS_AS(build(s, other), Error);
    try {
        build(s, other);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LayoutMismatch);
    }
}

TEST_CASE("kernel csv lists every stored entry") {
    MarkedKernel k = build(support::toy().model);
    std::string csv = kernel_to_csv(k);
    CHECK(csv.rfind("label,row,col,value\n", 0) == 0);
    Index nnz = k.Q.nonZeros();
    for (Label y : kAllLabels) nnz += k[y].nonZeros();
    CHECK(static_cast<Index>(std::count(csv.begin(), csv.end(), '\n')) == nnz + 1);
}

}
