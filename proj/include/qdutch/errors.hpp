#pragma once

#include <stdexcept>
#include <string>

namespace qdutch {

/// Malformed or out-of-domain caller input (bad counts, unparsable files,
/// non-normalized distributions).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditioning on an event of (numerically) zero probability.
class NullConditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operator failed its projector / density-operator validation.
class InvalidOperatorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qdutch
