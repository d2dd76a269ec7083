#include "reqquant/error.hpp"

namespace reqquant {

std::string_view reason_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::InvalidQuantification: return "invalid-quantification";
        case ErrorKind::IndexOutOfRange: return "index-out-of-range";
        case ErrorKind::OrderingViolation: return "ordering-violation";
        case ErrorKind::ValueOutOfRange: return "value-out-of-range";
        case ErrorKind::BelowMinimumPoints: return "minimum-points";
        case ErrorKind::EmptyText: return "empty-text";
        case ErrorKind::NoThreshold: return "no-threshold";
        case ErrorKind::DegenerateThreshold: return "degenerate-threshold";
        case ErrorKind::DimensionMismatch: return "dimension-mismatch";
        case ErrorKind::ZeroNorm: return "zero-norm";
        case ErrorKind::Transport: return "transport";
        case ErrorKind::BadResponse: return "bad-response";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::DuplicateId: return "duplicate-id";
        case ErrorKind::NotFound: return "not-found";
        case ErrorKind::Io: return "io";
        case ErrorKind::SessionExhausted: return "session-exhausted";
        case ErrorKind::SessionFinalized: return "session-finalized";
        case ErrorKind::InvalidPath: return "invalid-path";
        case ErrorKind::NoOp: return "no-op";
    }
    return "unknown";
}

}  // namespace reqquant
