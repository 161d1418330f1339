#include "standby/ph.hpp"

#include <sstream>
#include <vector>

namespace standby {

Matrix identity(Index n) { return Matrix::Identity(n, n); }
Vector ones(Index n) { return Vector::Ones(n); }

DiscretePH geometric_ph(double p) {
    DiscretePH ph{RowVector::Ones(1), Matrix::Constant(1, 1, p)};
    return ph;
}

DiscretePH generalized_erlang2_ph(double p1, double p2) {
    DiscretePH ph{RowVector::Zero(2), Matrix::Zero(2, 2)};
    ph.alpha(0) = 1.0;
    ph.S << p1, 1.0 - p1, 0.0, p2;
    return ph;
}

Vector DiscretePH::exit() const { return exit_vector(S); }

Vector exit_vector(const Matrix& a, double tol) {
    Vector out = Vector::Ones(a.rows()) - a.rowwise().sum();
    for (Index i = 0; i < out.size(); ++i) {
        if (out(i) < -tol) {
            std::ostringstream os;
            os << "row " << i + 1 << " sums to " << 1.0 - out(i) << " > 1";
            throw Error(ErrorCode::RowSumExceedsOne, os.str());
        }
        if (out(i) < 0.0) out(i) = 0.0;
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool absorbs_from_every_phase(const Matrix& S, double tol) {
    // Backward reachability from phases with positive exit mass.
    const Index z = S.rows();
    Vector ex = Vector::Ones(z) - S.rowwise().sum();
    std::vector<char> reach(z, 0);
    std::vector<Index> stack;
    for (Index i = 0; i < z; ++i)
        if (ex(i) > tol) { reach[i] = 1; stack.push_back(i); }
    while (!stack.empty()) {
        Index j = stack.back();
        stack.pop_back();
        for (Index i = 0; i < z; ++i)
            if (!reach[i] && S(i, j) > tol) { reach[i] = 1; stack.push_back(i); }
    }
    for (char r : reach)
        if (!r) return false;
    return true;
}

PhVerdict validate_ph(const DiscretePH& ph, bool require_absorbing, double tol) {
    auto fail = [](ErrorCode c, std::string d) { return PhVerdict{c, std::move(d)}; };
    const Index z = ph.S.rows();
    if (z == 0 || ph.S.cols() != z || ph.alpha.size() != z) {
        std::ostringstream os;
        os << "alpha has length " << ph.alpha.size() << ", S is " << ph.S.rows() << "x" << ph.S.cols();
        return fail(ErrorCode::DimensionMismatch, os.str());
    }
    for (Index i = 0; i < z; ++i) {
        if (ph.alpha(i) < -tol || ph.alpha(i) > 1.0 + tol)
            return fail(ErrorCode::NegativeEntry, "initial vector entry " + std::to_string(i + 1) + " outside [0,1]");
        for (Index j = 0; j < z; ++j)
            if (ph.S(i, j) < -tol)
                return fail(ErrorCode::NegativeEntry,
                            "row " + std::to_string(i + 1) + " column " + std::to_string(j + 1) + " is negative");
    }
    for (Index i = 0; i < z; ++i) {
        double rs = ph.S.row(i).sum();
        if (rs > 1.0 + tol) {
            std::ostringstream os;
            os << "row " << i + 1 << " sums to " << rs << " > 1";
            return fail(ErrorCode::RowSumExceedsOne, os.str());
        }
    }
    if (std::abs(ph.alpha.sum() - 1.0) > tol) {
        std::ostringstream os;
        os << "initial vector sums to " << ph.alpha.sum();
        return fail(ErrorCode::InitialMassNotOne, os.str());
    }
    if (require_absorbing && !absorbs_from_every_phase(ph.S))
        return fail(ErrorCode::NotAbsorbing, "some phase never reaches absorption (spectral radius 1)");
    return {};
}

void require_valid(const DiscretePH& ph, const std::string& name, bool require_absorbing) {
    PhVerdict v = validate_ph(ph, require_absorbing);
    if (!v) throw Error(*v.violation, name + ": " + v.detail);
}

double ph_mean(const DiscretePH& ph) {
    if (!absorbs_from_every_phase(ph.S))
        throw Error(ErrorCode::NotAbsorbing, "PH mean undefined: absorption not certain");
    const Index z = ph.order();
    Vector x = (identity(z) - ph.S).partialPivLu().solve(Vector::Ones(z));
    return ph.alpha.dot(x);
}

RowVector renewal_stationary(const DiscretePH& ph) {
    const Index z = ph.order();
    Matrix P = ph.S + ph.exit() * ph.alpha;
    Matrix A = P - identity(z);
    Eigen::FullPivLU<Matrix> lu(A);
    if (lu.rank() != z - 1)
        throw Error(ErrorCode::NonUniqueStationary, "renewal chain has no unique stationary vector");
    // x (P - I) = 0, x e = 1: replace one balance column by the normalization.
    A.col(0).setOnes();
    RowVector rhs = RowVector::Zero(z);
    rhs(0) = 1.0;
    RowVector x = A.transpose().partialPivLu().solve(rhs.transpose()).transpose();
    for (Index i = 0; i < z; ++i)
        if (x(i) < 0.0 && x(i) > -1e-14) x(i) = 0.0;
    return x;
}

}  // namespace standby
