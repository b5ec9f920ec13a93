#ifndef EWB_ERRORS_HPP
#define EWB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ewb {

// Every failure mode in the library maps to one of these codes. Callers that
// care about the *kind* of failure switch on code(); the message is for humans.
enum class ErrorCode {
    InvalidParams,
    NoBrokenMinimum,
    NoTransition,
    DivergentRadius,
    QuadratureFailure,
    OutOfWindow,
    EmptyTable,
    ZeroMass,
    NegativeDensity,
    TooFewEvents,
    BeforeFormation,
    PlacementExhausted,
    OutOfDomain,
    OutOfRange,
    NonPositiveDuration,
    ParseError,
    ValidationError,
    IoFailure,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParams:       return "InvalidParams";
        case ErrorCode::NoBrokenMinimum:     return "NoBrokenMinimum";
        case ErrorCode::NoTransition:        return "NoTransition";
        case ErrorCode::DivergentRadius:     return "DivergentRadius";
        case ErrorCode::QuadratureFailure:   return "QuadratureFailure";
        case ErrorCode::OutOfWindow:         return "OutOfWindow";
        case ErrorCode::EmptyTable:          return "EmptyTable";
        case ErrorCode::ZeroMass:            return "ZeroMass";
        case ErrorCode::NegativeDensity:     return "NegativeDensity";
        case ErrorCode::TooFewEvents:        return "TooFewEvents";
        case ErrorCode::BeforeFormation:     return "BeforeFormation";
        case ErrorCode::PlacementExhausted:  return "PlacementExhausted";
        case ErrorCode::OutOfDomain:         return "OutOfDomain";
        case ErrorCode::OutOfRange:          return "OutOfRange";
        case ErrorCode::NonPositiveDuration: return "NonPositiveDuration";
        case ErrorCode::ParseError:          return "ParseError";
        case ErrorCode::ValidationError:     return "ValidationError";
        case ErrorCode::IoFailure:           return "IoFailure";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ewb

#endif
