#pragma once

#include <stdexcept>
#include <string>

namespace rwre {

/// Bad configuration or bad arguments (CLI exit code 2).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// File system and parse failures (CLI exit code 3).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// A reinforcement function was queried at a history outside N_poss.
class ImpossibleHistoryError : public std::runtime_error {
 public:
  explicit ImpossibleHistoryError(const std::string& what) : std::runtime_error(what) {}
};

/// An estimator query for which the trajectory holds no data.
class NoObservationsError : public std::runtime_error {
 public:
  explicit NoObservationsError(const std::string& what) : std::runtime_error(what) {}
};

/// A moment table lacks an entry required by a downstream computation.
class InsufficientTableError : public std::runtime_error {
 public:
  explicit InsufficientTableError(const std::string& what) : std::runtime_error(what) {}
};

/// Degenerate input to a statistical test.
class StatError : public std::runtime_error {
 public:
  explicit StatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rwre
