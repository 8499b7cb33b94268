#pragma once

#include <stdexcept>

namespace dsirrep {

/// An argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Inputs that are individually well-formed but jointly violate a precondition.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace dsirrep
