#pragma once

#include <stdexcept>

namespace hupcf {

/// Thrown when a quadrature or eigensolve cannot reach the requested
/// accuracy within its configured budget. Distinct from argument
/// validation errors (std::invalid_argument / std::domain_error) so the
/// CLI can map the two families to different exit codes.
class accuracy_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace hupcf
