#include "standby/unit_kernel.hpp"

#include <sstream>

namespace standby {

namespace {

void check_exit_identity(const Matrix& A, const Vector& r0, const Vector& nr0, const std::string& name) {
    const Index m = A.rows();
    if (A.cols() != m || r0.size() != m || nr0.size() != m)
        throw Error(ErrorCode::DimensionMismatch, "unit." + name + ": dimensions disagree with the internal order");
    for (Index i = 0; i < m; ++i) {
        if (r0(i) < 0.0 || nr0(i) < 0.0)
            throw Error(ErrorCode::NegativeEntry, "unit." + name + "_r0/_nr0 row " + std::to_string(i + 1) + " is negative");
        for (Index j = 0; j < m; ++j)
            if (A(i, j) < 0.0)
                throw Error(ErrorCode::NegativeEntry, "unit." + name + " row " + std::to_string(i + 1) + " is negative");
        double rs = A.row(i).sum();
        if (rs > 1.0 + 1e-12) {
            std::ostringstream os;
            os << "unit." << name << " row " << i + 1 << " sums to " << rs << " > 1";
            throw Error(ErrorCode::RowSumExceedsOne, os.str());
        }
        double total = rs + r0(i) + nr0(i);
        if (std::abs(total - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "unit." << name << " row " << i + 1 << ": transitions plus failure exits sum to " << total;
            throw Error(ErrorCode::ModelInvalid, os.str());
        }
    }
}

Matrix col(const Vector& v) { return v; }
Matrix row(const RowVector& v) { return v; }

}  // namespace

void OnlineUnitModel::validate() const {
    const Index mm = m();
    if (alpha.size() != mm)
        throw Error(ErrorCode::DimensionMismatch, "unit.alpha: length differs from the order of unit.T");
    check_exit_identity(T, T_r0, T_nr0, "T");
    require_valid(DiscretePH{alpha, T}, "unit.alpha", false);
    check_exit_identity(W, W_r0, W_nr0, "W");
    if (m1 < 1 || m1 >= mm)
        throw Error(ErrorCode::InvalidMinorCount, "unit.m1: need 1 <= m1 < m");
    if (!(omega0 >= 0.0 && omega0 <= 1.0))
        throw Error(ErrorCode::ModelInvalid, "unit.omega0: must lie in [0,1]");
    require_valid(shock, "unit.shock.L", true);
    require_valid(inspection, "unit.inspection.M", false);
}

std::pair<Matrix, Matrix> selectors(Index m, Index m1) {
    if (m1 < 1 || m1 >= m) throw Error(ErrorCode::InvalidMinorCount, "need 1 <= m1 < m");
    Matrix U1 = Matrix::Zero(m, m), U2 = Matrix::Zero(m, m);
    for (Index i = 0; i < m; ++i) (i < m1 ? U1 : U2)(i, i) = 1.0;
    return {U1, U2};
}

Matrix shock_renewal(const OnlineUnitModel& model) {
    return model.shock.S + model.shock.exit() * model.shock.alpha;
}

Matrix reentry_kernel(const OnlineUnitModel& model) {
    return kron(kron(row(model.alpha), shock_renewal(model)), row(model.inspection.alpha));
}

Matrix event_kernel(const OnlineUnitModel& model, UnitEvent event, bool last_unit) {
    const Index m = model.m(), ep = model.eps();
    const Matrix& T = model.T;
    const Matrix& W = model.W;
    const Matrix& L = model.shock.S;
    const Matrix& M = model.inspection.S;
    const double om = model.omega0;
    const Vector M0 = model.inspection.exit();
    const Matrix shock = model.shock.exit() * model.shock.alpha;  // L^0 gamma
    const Matrix a = row(model.alpha);
    const Matrix eta = row(model.inspection.alpha);
    const Matrix e_m = Matrix::Ones(m, 1), e_eps = Matrix::Ones(ep, 1);
    auto [U1, U2] = selectors(m, model.m1);

    // Failure exits of one step: without shock, and after a survived shock
    // (internal exit first, else the shock's W exit from the new phase).
    auto exits = [&](const Vector& t0, const Vector& w0) {
        Matrix plain = col(t0);
        Matrix shocked = col(t0) + T * col(w0);
        return std::pair{plain, shocked};
    };
    // Column blocks at the end of a failure kernel: restart (alpha, eta) or
    // drop to the shock phase only.
    auto finish = [&](const Matrix& internal_col, const Matrix& shock_part) {
        if (last_unit) return kron(kron(internal_col, shock_part), e_eps);
        return kron(kron(internal_col * a, shock_part), e_eps * eta);
    };

    switch (event) {
        case UnitEvent::NoEvent: {
            Matrix minor_insp = M + col(M0) * eta;
            Matrix out = kron(kron(U1 * T, L), minor_insp) + kron(kron(U2 * T, L), M);
            out += kron(kron(U1 * T * W, (1.0 - om) * shock), minor_insp);
            out += kron(kron(U2 * T * W, (1.0 - om) * shock), M);
            return out;
        }
        case UnitEvent::RepairableFailure: {
            auto [plain, shocked] = exits(model.T_r0, model.W_r0);
            return finish(plain, L) + finish(shocked, (1.0 - om) * shock);
        }
        case UnitEvent::NonRepairableFailure: {
            auto [plain, shocked] = exits(model.T_nr0, model.W_nr0);
            return finish(plain, L) + finish(shocked, (1.0 - om) * shock) + finish(e_m, om * shock);
        }
        case UnitEvent::MajorInspection: {
            // Only a unit that was major before the step and did not fail.
            Matrix survive = U2 * T * e_m;
            Matrix survive_shock = U2 * T * W * e_m;
            auto tail = [&](const Matrix& internal_col, const Matrix& shock_part) {
                if (last_unit) return kron(kron(internal_col, shock_part), col(M0));
                return kron(kron(internal_col * a, shock_part), col(M0) * eta);
            };
            return tail(survive, L) + tail(survive_shock, (1.0 - om) * shock);
        }
    }
    throw Error(ErrorCode::ModelInvalid, "unknown unit event");
}

OnlineUnitModel without_inspections(OnlineUnitModel model) {
    Vector M0 = model.inspection.exit();
    for (Index i = 0; i < M0.size(); ++i) model.inspection.S(i, i) += M0(i);
    return model;
}

UnitKernels::UnitKernels(const OnlineUnitModel& model)
    : HO(event_kernel(model, UnitEvent::NoEvent, false)),
      HA(event_kernel(model, UnitEvent::RepairableFailure, false)),
      HB(event_kernel(model, UnitEvent::MajorInspection, false)),
      HC(event_kernel(model, UnitEvent::NonRepairableFailure, false)),
      HAp(event_kernel(model, UnitEvent::RepairableFailure, true)),
      HBp(event_kernel(model, UnitEvent::MajorInspection, true)),
      HCp(event_kernel(model, UnitEvent::NonRepairableFailure, true)),
      shock_only(shock_renewal(model)),
      theta(reentry_kernel(model)) {}

const Matrix& UnitKernels::get(UnitEvent event, bool last_unit) const {
    switch (event) {
        case UnitEvent::NoEvent: return HO;
        case UnitEvent::RepairableFailure: return last_unit ? HAp : HA;
        case UnitEvent::MajorInspection: return last_unit ? HBp : HB;
        case UnitEvent::NonRepairableFailure: return last_unit ? HCp : HC;
    }
    return HO;
}

}  // namespace standby
