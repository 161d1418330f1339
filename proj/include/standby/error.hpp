#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace standby {

enum class ErrorCode {
    NegativeEntry,
    RowSumExceedsOne,
    InitialMassNotOne,
    NotAbsorbing,
    DimensionMismatch,
    NonUniqueStationary,
    InvalidMinorCount,
    ModelInvalid,
    InvalidMacro,
    InvalidThreshold,
    OutOfRange,
    LayoutMismatch,
    NonStochasticResult,
    Reducible,
    RecursionDirectMismatch,
    InfeasiblePoint,
    ConfigInvalid,
    Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace standby
