#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grval {

enum class Errc {
    NegativeValuation,
    ZeroInput,
    SyntaxError,
    UnknownGenerator,
    FieldMismatch,
    NonHomogeneousGenerator,
    NonHomogeneousPresentation,
    InvalidArity,
    NotAntisymmetric,
    SpecMismatch,
    InvalidSpec,
    ZeroElement,
    DomainFailure,
    ZeroDenominator,
    ZeroRelation,
    JacobiFailure,
    DimensionMismatch,
    SpanMismatch,
    DivisionByZero,
    InvalidField,
};

constexpr std::string_view errc_name(Errc c)
{
    switch (c) {
    case Errc::NegativeValuation: return "NegativeValuation";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownGenerator: return "UnknownGenerator";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NonHomogeneousGenerator: return "NonHomogeneousGenerator";
    case Errc::NonHomogeneousPresentation: return "NonHomogeneousPresentation";
    case Errc::InvalidArity: return "InvalidArity";
    case Errc::NotAntisymmetric: return "NotAntisymmetric";
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::DomainFailure: return "DomainFailure";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::ZeroRelation: return "ZeroRelation";
    case Errc::JacobiFailure: return "JacobiFailure";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SpanMismatch: return "SpanMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::InvalidField: return "InvalidField";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Parse errors additionally report the offending byte offset.
class SyntaxError : public Error {
public:
    SyntaxError(Errc code, std::size_t position, const std::string& what)
        : Error(code, what + " at position " + std::to_string(position)), position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace grval
