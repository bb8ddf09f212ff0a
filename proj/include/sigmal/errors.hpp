#ifndef SIGMAL_ERRORS_HPP
#define SIGMAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sigmal {

// All throwing preconditions in the library use one of these types, so callers
// can tell a misuse (alphabet mixup, truncation too low) from a runtime event
// (zero denominator on a sampled path).

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegreeExceedsTruncation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TruncationMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotGroupLike : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonzeroConstantTerm : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TooFewSamples : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonMonotoneTimes : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonIncreasingTimes : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RhoAtBoundary : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TruncationTooLow : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ZeroDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sigmal

#endif
