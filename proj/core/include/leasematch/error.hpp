#pragma once

#include <stdexcept>
#include <string>

namespace leasematch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Nonpositive link distance or an impossible placement request.
class InvalidGeometryError : public Error {
 public:
  using Error::Error;
};

// Outage conditioning did not produce an admissible fading draw within the
// retry budget for the named CEU.
class ConditioningFailureError : public Error {
 public:
  ConditioningFailureError(int ceu_index, int retries)
      : Error("outage conditioning failed for CEU " + std::to_string(ceu_index) +
              " after " + std::to_string(retries) + " retries"),
        ceu_index_(ceu_index) {}
  int ceu_index() const { return ceu_index_; }

 private:
  int ceu_index_;
};

// Allocation coefficient outside the open interval (0, 0.5).
class InvalidAllocationError : public Error {
 public:
  using Error::Error;
};

// Follower best response requested for a pair that cannot cooperate.
class InfeasiblePairError : public Error {
 public:
  using Error::Error;
};

// Preference lists with duplicates, out-of-range ids, or one-sided
// acceptability.
class MalformedPreferencesError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration requested above the supported instance size.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Rejected configuration input; line() is 1-based, 0 when the failure is not
// tied to a specific line.
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace leasematch
