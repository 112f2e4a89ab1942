#pragma once

#include <stdexcept>
#include <string>

namespace wfl {

/// Input lies outside the domain where an operation is defined
/// (wrong cone, non-Jost configuration, bad sizes).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation point sits on a singularity or branch cut.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure could not reach its requested accuracy.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wfl
