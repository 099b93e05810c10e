#pragma once

#include <stdexcept>
#include <string>

namespace cmvbeta {

/// A parameter lies outside the domain where the quantity is defined.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coincident support points, a vanishing pivot, or any other input whose
/// spectral measure has fewer points than the matrix dimension.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotUnitaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejection sampler whose exact acceptance probability is too small to use.
class EnvelopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ParameterError(what);
}

}  // namespace detail
}  // namespace cmvbeta
