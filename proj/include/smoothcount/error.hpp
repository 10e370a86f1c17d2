#pragma once

#include <stdexcept>
#include <string>

namespace smoothcount {

/// Malformed or out-of-domain input (bad indices, probabilities outside (0,1), ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The zero-free polydisc condition does not hold where an evaluation needs it.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the configured term budget or size cap.
class WorkLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver failed to reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smoothcount
