#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace keo {

enum class ErrorCode {
    DivisionByZero,
    Overflow,
    InvalidNumber,
    ConstraintViolation,
    WeightSumViolation,
    UnknownName,
    ParameterOutOfDomain,
    OutsideAllowedRegion,
    ConstraintUnsatisfied,
    IrrationalSquareRoot,
    DegenerateDenominator,
    DualOutsideAllowedRegion,
    SyntaxError,
    WrongMomentumCount,
    NonUnitWeightSum,
    PerTermConstraintViolation,
    InvalidGrid,
    InvalidProfile,
    NonPositiveMass,
    GridMismatch,
    NotSymmetric,
    InvalidCount,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidNumber: return "InvalidNumber";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::WeightSumViolation: return "WeightSumViolation";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ParameterOutOfDomain: return "ParameterOutOfDomain";
    case ErrorCode::OutsideAllowedRegion: return "OutsideAllowedRegion";
    case ErrorCode::ConstraintUnsatisfied: return "ConstraintUnsatisfied";
    case ErrorCode::IrrationalSquareRoot: return "IrrationalSquareRoot";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::DualOutsideAllowedRegion: return "DualOutsideAllowedRegion";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::WrongMomentumCount: return "WrongMomentumCount";
    case ErrorCode::NonUnitWeightSum: return "NonUnitWeightSum";
    case ErrorCode::PerTermConstraintViolation: return "PerTermConstraintViolation";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::InvalidCount: return "InvalidCount";
    }
    return "Unknown";
}

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure carrying the byte offset into the source text.
class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::size_t position, const std::string& message)
        : Error(code, message), position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace keo
