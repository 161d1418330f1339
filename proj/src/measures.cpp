#include "standby/measures.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>

#include "standby/kernels.hpp"
#include "standby/report.hpp"

namespace standby {

RowVector initial_distribution(const SystemModel& model, const StateSpaceLayout& layout) {
    RowVector phi = RowVector::Zero(layout.size());
    Matrix local = kron(kron(kron(Matrix(model.unit.alpha), Matrix(renewal_stationary(model.unit.shock))),
                             Matrix(model.unit.inspection.alpha)),
                        Matrix(model.vacation.alpha));
    const QueueSlot& sl = layout.slot({layout.n(), 0, Mode::Vacation, {}});
    phi.segment(sl.offset, sl.dim) = local.row(0);
    return phi;
}

TransientPath transient(const MarkedKernel& kernel, const RowVector& phi, int horizon) {
    if (horizon < 0) throw Error(ErrorCode::OutOfRange, "horizon must be non-negative");
    TransientPath path;
    path.p.reserve(static_cast<std::size_t>(horizon) + 1);
    path.p.push_back(phi);
    SparseColMatrix Dcol = kernel.D;
    RowVector next;
    for (int v = 1; v <= horizon; ++v) {
        kernels::vecmat_parallel(path.p.back(), Dcol, next);
        path.p.push_back(next);
    }
    kernels::vecmat_parallel(path.p.back(), Dcol, next);
    path.convergence = (next - path.p.back()).cwiseAbs().maxCoeff();
    return path;
}

namespace {

SparseColMatrix level_block(const SparseMatrix& D, const StateSpaceLayout& L, int from, int to) {
    SparseColMatrix out = D.block(L.level_offset(from), L.level_offset(to), L.level_dim(from), L.level_dim(to));
    out.makeCompressed();
    return out;
}

// X = B (I - Djj)^{-1}, or nothing if (I - Djj) is singular.
std::optional<Matrix> right_solve(const Matrix& B, const SparseColMatrix& Djj) {
    const Index d = Djj.rows();
    SparseColMatrix I(d, d);
    I.setIdentity();
    SparseColMatrix At = SparseColMatrix(I - Djj).transpose();
    Eigen::SparseLU<SparseColMatrix> lu;
    lu.compute(At);
    if (lu.info() != Eigen::Success) return std::nullopt;
    // The extra ones column is never in the range of a singular (I - Djj)^T
    // (a closed class inside the level), even when B itself is zero.
    Matrix rhs(d, B.rows() + 1);
    rhs.leftCols(B.rows()) = B.transpose();
    rhs.col(B.rows()).setOnes();
    Matrix X = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !X.allFinite()) return std::nullopt;
    // A near-singular factorization shows up as a large backward error.
    if ((At * X - rhs).cwiseAbs().maxCoeff() > 1e-9) return std::nullopt;
    return Matrix(X.leftCols(B.rows()).transpose());
}

}  // namespace

std::optional<RowVector> stationary_recursion(const MarkedKernel& kernel) {
    const StateSpaceLayout& L = kernel.layout;
    const SparseMatrix& D = kernel.D;
    const int n = L.n();
    const Index d1 = L.level_dim(1);

    std::vector<Matrix> Rj(n + 1);
    Matrix A = Matrix::Identity(d1, d1) - Matrix(level_block(D, L, 1, 1));
    if (n >= 2) {
        auto Rn = right_solve(Matrix(level_block(D, L, 1, n)), level_block(D, L, n, n));
        if (!Rn) return std::nullopt;
        Rj[n] = std::move(*Rn);
        for (int j = n - 1; j >= 2; --j) {
            Matrix B = Rj[j + 1] * level_block(D, L, j + 1, j);
            auto r = right_solve(B, level_block(D, L, j, j));
            if (!r) return std::nullopt;
            Rj[j] = std::move(*r);
        }
        A -= Rj[2] * level_block(D, L, 2, 1);
    }
    // x A = 0 with the first column replaced by the normalization weights.
    Vector w = Vector::Ones(d1);
    for (int j = 2; j <= n; ++j) w += Rj[j].rowwise().sum();
    A.col(0) = w;
    Eigen::FullPivLU<Matrix> lu(A.transpose());
    if (!lu.isInvertible()) return std::nullopt;
    Vector rhs = Vector::Zero(d1);
    rhs(0) = 1.0;
    RowVector pi1 = lu.solve(rhs).transpose();

    RowVector pi(L.size());
    pi.segment(L.level_offset(1), d1) = pi1;
    for (int j = 2; j <= n; ++j) pi.segment(L.level_offset(j), L.level_dim(j)) = pi1 * Rj[j];
    if (!pi.allFinite()) return std::nullopt;
    return pi;
}

RowVector stationary_direct(const MarkedKernel& kernel, const RowVector& phi, Index* reachable) {
    const SparseMatrix& D = kernel.D;
    const Index n = D.rows();
    std::vector<Index> pos(n, -1), states;
    for (Index i = 0; i < n; ++i)
        if (phi[i] > 0.0) { pos[i] = static_cast<Index>(states.size()); states.push_back(i); }
    for (std::size_t h = 0; h < states.size(); ++h)
        for (SparseMatrix::InnerIterator it(D, states[h]); it; ++it)
            if (it.value() > 0.0 && pos[it.col()] < 0) {
                pos[it.col()] = static_cast<Index>(states.size());
                states.push_back(it.col());
            }
    const Index r = static_cast<Index>(states.size());
    if (reachable) *reachable = r;

    // (I - D_rr)^T x = 0 with the first equation replaced by sum(x) = 1.
    std::vector<Eigen::Triplet<double>> trip;
    for (Index a = 0; a < r; ++a) {
        trip.emplace_back(0, a, 1.0);
        if (a != 0) trip.emplace_back(a, a, 1.0);
        for (SparseMatrix::InnerIterator it(D, states[a]); it; ++it) {
            Index b = pos[it.col()];
            if (b > 0) trip.emplace_back(b, a, -it.value());
        }
    }
    SparseColMatrix A(r, r);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<SparseColMatrix> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw Error(ErrorCode::Reducible, "no unique stationary vector on the reachable states");
    Vector rhs = Vector::Zero(r);
    rhs(0) = 1.0;
    Vector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite() || (A * x - rhs).cwiseAbs().maxCoeff() > 1e-9)
        throw Error(ErrorCode::Reducible, "no unique stationary vector on the reachable states");
    RowVector pi = RowVector::Zero(n);
    for (Index a = 0; a < r; ++a) pi[states[a]] = x[a];
    return pi;
}

namespace {

void clean(RowVector& pi) {
    for (Index i = 0; i < pi.size(); ++i)
        if (pi[i] < 0.0 && pi[i] > -1e-13) pi[i] = 0.0;
}

}  // namespace

StationaryResult stationary(const MarkedKernel& kernel, const RowVector& phi, double agreement_tol,
                            bool cross_check) {
    StationaryResult res;
    auto rec = stationary_recursion(kernel);
    if (rec && cross_check) {
        RowVector direct = stationary_direct(kernel, phi, &res.reachable);
        res.recursion_direct_gap = (*rec - direct).cwiseAbs().maxCoeff();
        if (!(res.recursion_direct_gap <= agreement_tol)) {
            std::ostringstream os;
            os << "censoring recursion and direct solve differ by " << res.recursion_direct_gap;
            throw Error(ErrorCode::RecursionDirectMismatch, os.str());
        }
    }
    if (rec) {
        res.recursion_used = true;
        res.pi = std::move(*rec);
    } else {
        res.pi = stationary_direct(kernel, phi, &res.reachable);
        res.note = "level blocks never exit (no loss of units); direct solve used";
    }
    clean(res.pi);
    RowVector piD;
    kernels::vecmat_serial(res.pi, kernel.D, piD);
    res.balance_residual = (piD - res.pi).cwiseAbs().maxCoeff();
    res.level_mass = level_masses(kernel.layout, res.pi);
    res.block_mass = block_masses(kernel.layout, res.pi);
    return res;
}

std::map<BlockId, double> block_masses(const StateSpaceLayout& layout, const RowVector& dist) {
    std::map<BlockId, double> out;
    for (const Block& b : layout.blocks()) out[b.id] = dist.segment(b.offset, b.dim).sum();
    return out;
}

std::vector<double> level_masses(const StateSpaceLayout& layout, const RowVector& dist) {
    std::vector<double> out(layout.n() + 1, 0.0);
    for (int k = 1; k <= layout.n(); ++k) out[k] = dist.segment(layout.level_offset(k), layout.level_dim(k)).sum();
    return out;
}

double availability(const StateSpaceLayout& layout, const RowVector& dist) {
    double down = 0.0;
    for (const Block& b : layout.blocks())
        if (b.id.s == b.id.k) down += dist.segment(b.offset, b.dim).sum();
    return 1.0 - down;
}

std::vector<double> availability(const StateSpaceLayout& layout, const TransientPath& path) {
    std::vector<double> out;
    out.reserve(path.p.size());
    for (const RowVector& p : path.p) out.push_back(availability(layout, p));
    return out;
}

RepairpersonProportions repairperson_proportions(const StateSpaceLayout& layout, const RowVector& pi) {
    RepairpersonProportions r;
    for (const Block& b : layout.blocks()) {
        if (b.id.mode != Mode::Workplace) continue;
        double m = pi.segment(b.offset, b.dim).sum();
        r.workplace += m;
        if (b.id.s >= 1) r.working += m;
    }
    r.vacation = 1.0 - r.workplace;
    r.idle = r.workplace - r.working;
    return r;
}

namespace {

MeanTimes collect(const StateSpaceLayout& layout, const std::map<BlockId, double>& per_block) {
    MeanTimes mt;
    mt.per_block = per_block;
    mt.per_level.assign(layout.n() + 1, 0.0);
    for (const auto& [id, v] : per_block) {
        mt.per_level[id.k] += v;
        if (id.s <= id.k - 1) mt.operational += v;
    }
    return mt;
}

}  // namespace

MeanTimes mean_times(const StateSpaceLayout& layout, const RowVector& pi) {
    return collect(layout, block_masses(layout, pi));
}

MeanTimes mean_times(const StateSpaceLayout& layout, const TransientPath& path, int v) {
    std::map<BlockId, double> acc;
    for (int m = 0; m <= v && m < static_cast<int>(path.p.size()); ++m)
        for (const auto& [id, x] : block_masses(layout, path.p[m])) acc[id] += x;
    return collect(layout, acc);
}

ReplacementTime replacement_time(const MarkedKernel& kernel, const RowVector& phi, int horizon) {
    if (kernel[Label::NS].nonZeros() == 0)
        throw Error(ErrorCode::NotAbsorbing, "the system is never replaced (no NS transitions)");
    if (horizon < 0) throw Error(ErrorCode::OutOfRange, "horizon must be non-negative");
    ReplacementTime rt;
    SparseColMatrix Dp = kernel.D_prime;
    RowVector x = phi, next;
    rt.reliability.push_back(x.sum());
    for (int v = 1; v <= horizon; ++v) {
        kernels::vecmat_parallel(x, Dp, next);
        x.swap(next);
        rt.reliability.push_back(x.sum());
    }
    const Index n = Dp.rows();
    SparseColMatrix I(n, n);
    I.setIdentity();
    SparseColMatrix A = I - Dp;
    Eigen::SparseLU<SparseColMatrix> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw Error(ErrorCode::NotAbsorbing, "replacement is not certain from every state");
    Vector y = lu.solve(Vector::Ones(n));
    if (!y.allFinite()) throw Error(ErrorCode::NotAbsorbing, "replacement is not certain from every state");
    rt.mean = phi.dot(y);
    return rt;
}

namespace {

void derive_groups(EventRates& r) {
    using L = Label;
    r.rep = r[L::A] + r[L::AD];
    r.mi = r[L::B] + r[L::BD];
    r.nr = r[L::C] + r[L::CD];
    r.rejoined = r[L::D] + r[L::AD] + r[L::BD] + r[L::CD];
    r.ns = r[L::NS];
}

}  // namespace

EventRates event_rates(const MarkedKernel& kernel, const RowVector& pi) {
    EventRates r;
    for (Label y : kAllLabels) r.by_label[static_cast<int>(y)] = pi.dot(kernels::row_sums(kernel[y]));
    r.rb = pi.dot(kernels::row_sums(kernel.Q));
    derive_groups(r);
    return r;
}

std::vector<EventRates> event_counts(const MarkedKernel& kernel, const TransientPath& path) {
    std::array<Vector, kLabelCount> rs;
    for (Label y : kAllLabels) rs[static_cast<int>(y)] = kernels::row_sums(kernel[y]);
    Vector qs = kernels::row_sums(kernel.Q);
    std::vector<EventRates> out(path.p.size());
    for (std::size_t v = 1; v < path.p.size(); ++v) {
        out[v] = out[v - 1];
        for (int y = 0; y < kLabelCount; ++y) out[v].by_label[y] += path.p[v - 1].dot(rs[y]);
        out[v].rb += path.p[v - 1].dot(qs);
        derive_groups(out[v]);
    }
    return out;
}

MeasureReport measure_report(const MarkedKernel& kernel, const StationaryResult& st, double mean_replacement) {
    MeasureReport r;
    r.A = availability(kernel.layout, st.pi);
    r.upsilon = repairperson_proportions(kernel.layout, st.pi);
    r.rates = event_rates(kernel, st.pi);
    r.mean_replacement = mean_replacement;
    r.pi_level = st.level_mass;
    return r;
}

namespace {

std::vector<std::pair<std::string, double>> report_pairs(const MeasureReport& r, int n) {
    std::vector<std::pair<std::string, double>> kv = {
        {"A", r.A},
        {"Y_nv", r.upsilon.workplace},
        {"Y_v", r.upsilon.vacation},
        {"Y_w", r.upsilon.working},
        {"Y_i", r.upsilon.idle},
        {"working_fraction", r.upsilon.working_fraction()},
        {"L_rep", r.rates.rep},
        {"L_mi", r.rates.mi},
        {"L_nr", r.rates.nr},
        {"L_rejoined", r.rates.rejoined},
        {"L_rb", r.rates.rb},
        {"L_NS", r.rates.ns},
        {"mean_replacement", r.mean_replacement},
    };
    for (int k = 1; k <= n; ++k) kv.emplace_back("pi_U" + std::to_string(k), r.pi_level[k]);
    return kv;
}

}  // namespace

std::string report_text(const MeasureReport& r, int n) {
    std::ostringstream os;
    for (const auto& [k, v] : report_pairs(r, n)) os << k << '=' << fmt_num(v) << '\n';
    return os.str();
}

std::string report_csv(const MeasureReport& r, int n) {
    std::ostringstream os;
    os << "measure,value\n";
    for (const auto& [k, v] : report_pairs(r, n)) os << k << ',' << fmt_num(v) << '\n';
    return os.str();
}

}  // namespace standby
