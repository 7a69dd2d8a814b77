#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wlocc {

enum class Errc {
  NegativeCoordinate,
  Supernormalized,
  IncompleteMeasurement,
  NotBipartite,
  NotTripartite,
  ProductState,
  NonzeroX0,
  OrderViolation,
  ParameterOutOfRange,
  MalformedProtocol,
  NotAState,
  MalformedInput,
  InfeasibleConstraint,
  NumericalFailure,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NegativeCoordinate: return "NegativeCoordinate";
    case Errc::Supernormalized: return "Supernormalized";
    case Errc::IncompleteMeasurement: return "IncompleteMeasurement";
    case Errc::NotBipartite: return "NotBipartite";
    case Errc::NotTripartite: return "NotTripartite";
    case Errc::ProductState: return "ProductState";
    case Errc::NonzeroX0: return "NonzeroX0";
    case Errc::OrderViolation: return "OrderViolation";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::MalformedProtocol: return "MalformedProtocol";
    case Errc::NotAState: return "NotAState";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::InfeasibleConstraint: return "InfeasibleConstraint";
    case Errc::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

// Numerical failures are distinguished from input validation errors so the
// CLI can report them with a separate exit status.
constexpr bool is_numerical(Errc code) {
  return code == Errc::InfeasibleConstraint || code == Errc::NumericalFailure;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace wlocc
