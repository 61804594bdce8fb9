#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace lqnet {

namespace detail {
inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}
}  // namespace detail

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input. Maps to CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Base for numerical failures. Maps to CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double time)
      : NumericalError(what + " at t=" + detail::num(time)), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class AccuracyError : public NumericalError {
 public:
  AccuracyError(const std::string& what, double achieved)
      : NumericalError(what + " (achieved " + detail::num(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class ResourceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Non-finite state during a simulation. Maps to CLI exit code 4.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, long path, double time)
      : Error(what + " (path " + std::to_string(path) + ", t=" + detail::num(time) + ")"),
        path_(path),
        time_(time) {}
  long path() const noexcept { return path_; }
  double time() const noexcept { return time_; }

 private:
  long path_;
  double time_;
};

}  // namespace lqnet
