#ifndef VACUUMPROBE_ERRORS_HPP
#define VACUUMPROBE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vacuumprobe {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument sits on (or within machine tolerance of) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A function parameter is outside the supported set (e.g. 2F1 with
/// gamma at a non-positive integer).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An iterative scheme failed to reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class InvalidInterval : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class CutoffTooSmall : public Error {
 public:
  using Error::Error;
};

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

class NormDriftExceeded : public Error {
 public:
  using Error::Error;
};

class PeakOutsideGrid : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vacuumprobe

#endif
