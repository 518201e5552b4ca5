#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lamconvex {

enum class ErrorCode {
    DegenerateInterval,
    AlphaOutOfRange,
    InvariantViolation,
    UndefinedAtBreakpoint,
    NotCoprime,
    JOutOfRange,
    SearchCapExceeded,
    InvalidArgument,
    ParseError,
    IOError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DegenerateInterval: return "DegenerateInterval";
        case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::UndefinedAtBreakpoint: return "UndefinedAtBreakpoint";
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::JOutOfRange: return "JOutOfRange";
        case ErrorCode::SearchCapExceeded: return "SearchCapExceeded";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IOError: return "IOError";
    }
    return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lamconvex
