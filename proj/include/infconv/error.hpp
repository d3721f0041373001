#pragma once

#include <stdexcept>
#include <string>

namespace infconv {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    EmptySet,
    NegInfUnsupported,
    NonProper,
    NoWitness,
    NoFiniteValues,
    InfiniteValue,
    PreconditionViolated,
    NotConvex,
    LipschitzViolated,
    SamplesOffGrid,
    OddSubdivision,
    DegenerateDiameter,
    BallOffGrid,
    ZeroNotOnGrid,
    ParseError,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// command-line front end can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NegInfUnsupported: return "NegInfUnsupported";
    case ErrorCode::NonProper: return "NonProper";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::NoFiniteValues: return "NoFiniteValues";
    case ErrorCode::InfiniteValue: return "InfiniteValue";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::LipschitzViolated: return "LipschitzViolated";
    case ErrorCode::SamplesOffGrid: return "SamplesOffGrid";
    case ErrorCode::OddSubdivision: return "OddSubdivision";
    case ErrorCode::DegenerateDiameter: return "DegenerateDiameter";
    case ErrorCode::BallOffGrid: return "BallOffGrid";
    case ErrorCode::ZeroNotOnGrid: return "ZeroNotOnGrid";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace infconv
