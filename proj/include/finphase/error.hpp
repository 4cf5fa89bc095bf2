#ifndef FINPHASE_ERROR_HPP
#define FINPHASE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace finphase {

enum class ErrorCode {
    // ledger
    InsufficientFunds,
    UnknownAgent,
    SelfTransfer,
    NegativeAmount,
    NoSuchDebt,
    Overflow,
    // configuration and input validation
    InvalidConfig,
    InvalidGrid,
    // statistics
    DegenerateSample,
    EmptyHistogram,
    TooFewPoints,
    // macro model
    NonpositiveCapital,
    NonpositiveLambda,
    NonpositiveInitialRate,
    NonpositiveStep,
    NonpositiveLevel,
    // bank model
    LoanExceedsReserves,
    NonpositiveSigma,
    NonpositiveLoan,
    // files
    FileNotFound,
    ParseError,
    DuplicateSector,
    UnknownSector,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error carrying a machine-checkable code. Failed operations leave
/// their inputs untouched.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InsufficientFunds: return "InsufficientFunds";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::SelfTransfer: return "SelfTransfer";
    case ErrorCode::NegativeAmount: return "NegativeAmount";
    case ErrorCode::NoSuchDebt: return "NoSuchDebt";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::EmptyHistogram: return "EmptyHistogram";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonpositiveCapital: return "NonpositiveCapital";
    case ErrorCode::NonpositiveLambda: return "NonpositiveLambda";
    case ErrorCode::NonpositiveInitialRate: return "NonpositiveInitialRate";
    case ErrorCode::NonpositiveStep: return "NonpositiveStep";
    case ErrorCode::NonpositiveLevel: return "NonpositiveLevel";
    case ErrorCode::LoanExceedsReserves: return "LoanExceedsReserves";
    case ErrorCode::NonpositiveSigma: return "NonpositiveSigma";
    case ErrorCode::NonpositiveLoan: return "NonpositiveLoan";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateSector: return "DuplicateSector";
    case ErrorCode::UnknownSector: return "UnknownSector";
    }
    return "Unknown";
}

} // namespace finphase

#endif // FINPHASE_ERROR_HPP
