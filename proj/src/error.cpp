#include <lcr/error.hpp>

namespace lcr {

auto error_kind_name(ErrorKind kind) -> std::string_view
{
    switch (kind) {
        case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::LevelZero: return "LevelZero";
        case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
        case ErrorKind::NotConnected: return "NotConnected";
        case ErrorKind::InvalidTensor: return "InvalidTensor";
        case ErrorKind::SymmetryAssertionFailed: return "SymmetryAssertionFailed";
        case ErrorKind::InvalidVectorSolution: return "InvalidVectorSolution";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::LevelMismatch: return "LevelMismatch";
        case ErrorKind::DomainMismatch: return "DomainMismatch";
        case ErrorKind::WrongParameters: return "WrongParameters";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorKind::EqualityVerificationFailed: return "EqualityVerificationFailed";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string & message) :
    std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
    _kind(kind)
{
}

}
