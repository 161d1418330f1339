#include "standby/error.hpp"

namespace standby {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeEntry: return "NegativeEntry";
        case ErrorCode::RowSumExceedsOne: return "RowSumExceedsOne";
        case ErrorCode::InitialMassNotOne: return "InitialMassNotOne";
        case ErrorCode::NotAbsorbing: return "NotAbsorbing";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonUniqueStationary: return "NonUniqueStationary";
        case ErrorCode::InvalidMinorCount: return "InvalidMinorCount";
        case ErrorCode::ModelInvalid: return "ModelInvalid";
        case ErrorCode::InvalidMacro: return "InvalidMacro";
        case ErrorCode::InvalidThreshold: return "InvalidThreshold";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::LayoutMismatch: return "LayoutMismatch";
        case ErrorCode::NonStochasticResult: return "NonStochasticResult";
        case ErrorCode::Reducible: return "Reducible";
        case ErrorCode::RecursionDirectMismatch: return "RecursionDirectMismatch";
        case ErrorCode::InfeasiblePoint: return "InfeasiblePoint";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

}  // namespace standby
