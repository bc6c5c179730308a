#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrc {

enum class ErrorKind {
    NotSquare,
    NotHermitian,
    DimensionMismatch,
    NonFinite,
    SiteOutOfRange,
    InputOutOfRange,
    NonHermitianResidue,
    EmptyVector,
    NotMultiple,
    InsufficientLength,
    LengthTooShort,
    Divergence,
    ParameterInvalid,
    DegenerateVariance,
    DegenerateSigma,
    Config,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::SiteOutOfRange: return "SiteOutOfRange";
    case ErrorKind::InputOutOfRange: return "InputOutOfRange";
    case ErrorKind::NonHermitianResidue: return "NonHermitianResidue";
    case ErrorKind::EmptyVector: return "EmptyVector";
    case ErrorKind::NotMultiple: return "NotMultiple";
    case ErrorKind::InsufficientLength: return "InsufficientLength";
    case ErrorKind::LengthTooShort: return "LengthTooShort";
    case ErrorKind::Divergence: return "Divergence";
    case ErrorKind::ParameterInvalid: return "ParameterInvalid";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::DegenerateSigma: return "DegenerateSigma";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

} // namespace qrc
