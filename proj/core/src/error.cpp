#include "rac/error.hpp"

namespace rac {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::MissingYear: return "MissingYear";
        case ErrorCode::NonPositiveValue: return "NonPositiveValue";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonPositiveConsumption: return "NonPositiveConsumption";
        case ErrorCode::UndefinedAtLogLimit: return "UndefinedAtLogLimit";
        case ErrorCode::NegativeVariance: return "NegativeVariance";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::DegenerateSystem: return "DegenerateSystem";
        case ErrorCode::Unclassifiable: return "Unclassifiable";
        case ErrorCode::InvalidCombination: return "InvalidCombination";
        case ErrorCode::EmptyReport: return "EmptyReport";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::SchemaError:
        case ErrorCode::MissingYear:
        case ErrorCode::NonPositiveValue:
        case ErrorCode::SeriesTooShort:
        case ErrorCode::InvalidArgument:
        case ErrorCode::NonPositiveConsumption:
        case ErrorCode::EmptyReport:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace rac
