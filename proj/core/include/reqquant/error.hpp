#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reqquant {

enum class ErrorKind {
    InvalidArgument,
    InvalidQuantification,
    IndexOutOfRange,
    OrderingViolation,
    ValueOutOfRange,
    BelowMinimumPoints,
    EmptyText,
    NoThreshold,
    DegenerateThreshold,
    DimensionMismatch,
    ZeroNorm,
    Transport,
    BadResponse,
    Parse,
    DuplicateId,
    NotFound,
    Io,
    SessionExhausted,
    SessionFinalized,
    InvalidPath,
    NoOp,
};

// Machine-readable reason used in service error bodies and CLI diagnostics.
std::string_view reason_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view reason() const noexcept { return reason_code(kind_); }

private:
    ErrorKind kind_;
};

}  // namespace reqquant
