#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcr {

enum class ErrorKind {
    NonPrimeModulus,
    DimensionMismatch,
    ShapeMismatch,
    LevelZero,
    SizeCapExceeded,
    NotConnected,
    InvalidTensor,
    SymmetryAssertionFailed,
    InvalidVectorSolution,
    OutOfRange,
    LevelMismatch,
    DomainMismatch,
    WrongParameters,
    LengthMismatch,
    SearchSpaceTooLarge,
    EqualityVerificationFailed,
    CapExceeded,
    Overflow,
    InvalidInput
};

auto error_kind_name(ErrorKind kind) -> std::string_view;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string & message);

    auto kind() const noexcept -> ErrorKind { return _kind; }

private:
    ErrorKind _kind;
};

}
