#ifndef SPHEULER_ERRORS_HPP_
#define SPHEULER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace spheuler {

/// Base class for all spheuler errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside the mathematical domain of an operation (negative density,
/// radius outside the grid, threshold out of range, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// A numerical procedure failed to reach its tolerance. Carries the estimate
/// that triggered the failure.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_ = 0.0;
};

/// Parameter schedule violates its budget. Carries the offending addend.
class ScheduleError : public Error {
 public:
  ScheduleError(const std::string& what, std::string addend, double value)
      : Error(what), addend_(std::move(addend)), value_(value) {}
  const std::string& addend() const { return addend_; }
  double value() const { return value_; }

 private:
  std::string addend_;
  double value_ = 0.0;
};

/// Time integration failed (density floor breach, singular solve). Carries
/// the failure time and grid location.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double time, int node, double radius)
      : Error(what), time_(time), node_(node), radius_(radius) {}
  double time() const { return time_; }
  int node() const { return node_; }
  double radius() const { return radius_; }

 private:
  double time_ = 0.0;
  int node_ = -1;
  double radius_ = 0.0;
};

/// Malformed configuration. Carries a line number (0 if not applicable) and
/// the offending field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : Error(what), line_(line), field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_ = 0;
  std::string field_;
};

/// Initial data unusable (non-finite energy, NaNs).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(what) {}
};

/// Test function violates an admissibility requirement.
class AdmissibilityError : public Error {
 public:
  explicit AdmissibilityError(const std::string& what) : Error(what) {}
};

/// Requested feature outside the supported set (e.g. spatial dimension).
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(what) {}
};

}  // namespace spheuler

#endif  // SPHEULER_ERRORS_HPP_
