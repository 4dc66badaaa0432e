#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rac {

enum class ErrorCode {
    // input / data errors
    SchemaError,
    MissingYear,
    NonPositiveValue,
    SeriesTooShort,
    InvalidArgument,
    // utility evaluation
    NonPositiveConsumption,
    UndefinedAtLogLimit,
    NegativeVariance,
    // calibration
    NoConvergence,
    DegenerateSystem,
    // classification
    Unclassifiable,
    InvalidCombination,
    // reporting
    EmptyReport,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by malformed or out-of-range inputs, as opposed to
/// failures of the numerical or classification machinery.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace rac
