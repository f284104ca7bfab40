#pragma once

#include <stdexcept>
#include <string>

namespace permprof {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// The measure assigns total weight zero to S_n, so no statistic is defined.
class ZeroMeasureError : public Error {
  public:
    explicit ZeroMeasureError(const std::string& what) : Error(what) {}
};

/// Exhaustive enumeration requested beyond the configured size cap.
class CapExceededError : public Error {
  public:
    explicit CapExceededError(const std::string& what) : Error(what) {}
};

/// Target mean size is not reachable by any Boltzmann parameter x in (0,1).
class CalibrationError : public Error {
  public:
    explicit CalibrationError(const std::string& what) : Error(what) {}
};

/// The Poisson rate tail beyond the cutoff could not be certified small.
class TailError : public Error {
  public:
    explicit TailError(const std::string& what) : Error(what) {}
};

/// Malformed request, e.g. repeated cycle lengths in a factorial-moment list.
class InvalidSpecError : public Error {
  public:
    explicit InvalidSpecError(const std::string& what) : Error(what) {}
};

/// Unparseable user input (weight spec strings, weight files).
class ParseError : public Error {
  public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace permprof
