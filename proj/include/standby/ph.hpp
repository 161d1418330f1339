#pragma once

#include <optional>
#include <string>

#include "standby/error.hpp"
#include "standby/types.hpp"

namespace standby {

// Discrete phase-type distribution (alpha, S): absorption time of a chain
// started from alpha with sub-stochastic step matrix S.
struct DiscretePH {
    RowVector alpha;
    Matrix S;

    Index order() const { return S.rows(); }
    Vector exit() const;
};

struct PhVerdict {
    std::optional<ErrorCode> violation;
    std::string detail;

    bool ok() const { return !violation.has_value(); }
    explicit operator bool() const { return ok(); }
};

// Checks entries, row sums, alpha mass and certain absorption, in that order.
// require_absorbing=false skips the last check; used for a disabled
// inspection clock, which never fires.
PhVerdict validate_ph(const DiscretePH& ph, bool require_absorbing = true, double tol = 1e-12);

// Throws Error(code, detail) on the first violation.
void require_valid(const DiscretePH& ph, const std::string& name, bool require_absorbing = true);

double ph_mean(const DiscretePH& ph);
RowVector renewal_stationary(const DiscretePH& ph);

Matrix kron(const Matrix& a, const Matrix& b);
Vector exit_vector(const Matrix& a, double tol = 1e-12);

// Vacation families of the sweep: geometric on {1,2,...} as the order-1 PH
// ((1), (p)), and the two-phase generalized Erlang ((1,0), [[p1,1-p1],[0,p2]]).
DiscretePH geometric_ph(double p);
DiscretePH generalized_erlang2_ph(double p1, double p2);

Matrix identity(Index n);
Vector ones(Index n);

// Phases that can reach absorption; used for the absorption check.
bool absorbs_from_every_phase(const Matrix& S, double tol = 1e-15);

}  // namespace standby
