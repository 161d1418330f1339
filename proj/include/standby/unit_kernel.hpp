#pragma once

#include <utility>

#include "standby/ph.hpp"

namespace standby {

// Degradation, shock and inspection model of the operating unit.
// Internal phases 0..m1-1 are minor, m1..m-1 major.
struct OnlineUnitModel {
    RowVector alpha;
    Matrix T;
    Vector T_r0, T_nr0;
    int m1 = 1;
    Matrix W;
    Vector W_r0, W_nr0;
    double omega0 = 0.0;
    DiscretePH shock;       // (gamma, L)
    DiscretePH inspection;  // (eta, M)

    Index m() const { return T.rows(); }
    Index t() const { return shock.order(); }
    Index eps() const { return inspection.order(); }
    Index dim() const { return m() * t() * eps(); }

    // Throws Error(ModelInvalid / ph codes) with a field path in the message.
    void validate() const;
};

enum class UnitEvent { NoEvent, RepairableFailure, MajorInspection, NonRepairableFailure };

std::pair<Matrix, Matrix> selectors(Index m, Index m1);

// Row dimension m*t*eps. Unprimed kernels (last_unit=false) restart a
// replacement unit from alpha and eta; primed ones keep only the shock phase.
Matrix event_kernel(const OnlineUnitModel& model, UnitEvent event, bool last_unit);

// Per-step shock-clock kernel while no unit is online, L + L^0 gamma.
Matrix shock_renewal(const OnlineUnitModel& model);

// theta = alpha (x) (L + L^0 gamma) (x) eta: shock-only phase to a fresh online unit.
Matrix reentry_kernel(const OnlineUnitModel& model);

// Same model with the inspection clock made non-exiting (M + diag(M^0)),
// i.e. preventive maintenance switched off; dimensions are unchanged.
OnlineUnitModel without_inspections(OnlineUnitModel model);

struct UnitKernels {
    Matrix HO, HA, HB, HC;     // m t eps -> m t eps
    Matrix HAp, HBp, HCp;      // m t eps -> t
    Matrix shock_only;         // t -> t
    Matrix theta;              // t -> m t eps

    explicit UnitKernels(const OnlineUnitModel& model);
    const Matrix& get(UnitEvent event, bool last_unit) const;
};

}  // namespace standby
