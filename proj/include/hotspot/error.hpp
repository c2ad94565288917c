#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hotspot {

enum class ErrorCode {
    InvalidArgument,
    NonPositiveField,
    InvalidExponent,
    GridMismatch,
    SolveFailure,
    UnresolvableMode,
    NonPositiveA,
    NegativeN,
    NonPositiveN,
    FloorViolation,
    InvalidInitialData,
    PositivityBreach,
    NonFinite,
    NegativeEntropyIntegrand,
    ConstantField,
    DegenerateField,
    InvalidConfig,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type; `code()` is what
// callers and tests dispatch on, the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hotspot
