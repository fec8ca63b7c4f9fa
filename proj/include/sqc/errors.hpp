#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqc {

enum class ErrorKind {
    InvalidState,
    InvalidBloch,
    DomainError,
    InvalidProbability,
    IncoherentSource,
    InvalidSource,
    NotReachable,
    NumericalFailure,
    NotSubnormalized,
    NotStrictlyIncoherent,
    ZeroProbabilityBranch,
    ParameterOutOfRange,
    TauNotIncoherent,
    WeightTooLarge,
    FreeState,
    InvalidConfig,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit code without string matching.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace sqc
