#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qacct {

enum class ErrorCode {
    UnbalancedEntry,
    UnknownAccount,
    NonPositiveAmount,
    NegativeAmount,
    MalformedEntry,
    DuplicateEntryId,
    UnclassifiedAccount,
    InsufficientAmount,
    MissingCapitalAccount,
    NonNormalizedAmplitudes,
    DimensionMismatch,
    PreconditionViolated,
    DegenerateKernel,
    SingularSystem,
    NonUnitaryU,
    BadTargets,
    OutOfRange,
    NoMarkedItem,
    SplitTooLarge,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::UnbalancedEntry: return "UnbalancedEntry";
        case ErrorCode::UnknownAccount: return "UnknownAccount";
        case ErrorCode::NonPositiveAmount: return "NonPositiveAmount";
        case ErrorCode::NegativeAmount: return "NegativeAmount";
        case ErrorCode::MalformedEntry: return "MalformedEntry";
        case ErrorCode::DuplicateEntryId: return "DuplicateEntryId";
        case ErrorCode::UnclassifiedAccount: return "UnclassifiedAccount";
        case ErrorCode::InsufficientAmount: return "InsufficientAmount";
        case ErrorCode::MissingCapitalAccount: return "MissingCapitalAccount";
        case ErrorCode::NonNormalizedAmplitudes: return "NonNormalizedAmplitudes";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::DegenerateKernel: return "DegenerateKernel";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::NonUnitaryU: return "NonUnitaryU";
        case ErrorCode::BadTargets: return "BadTargets";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NoMarkedItem: return "NoMarkedItem";
        case ErrorCode::SplitTooLarge: return "SplitTooLarge";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every domain failure in the library is reported through this type. The
/// code is stable and machine-checkable; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qacct
