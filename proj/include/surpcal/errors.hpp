#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surpcal {

// Construction-time invariant violations (bad probabilities, sizes, ...).
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A row of the joint matrix sums to zero: the signal never occurs under Q.
struct ZeroMarginal : std::runtime_error {
  explicit ZeroMarginal(std::size_t signal)
      : std::runtime_error("zero marginal for signal " + std::to_string(signal)),
        signal(signal) {}
  std::size_t signal;
};

// The prediction matrix violates Bayes consistency q_s P_{s,t} = q_t P_{t,s}
// beyond tolerance; the bundle cannot come from Bayesian reviewers.
struct InconsistentPrediction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No reviewer reported the given signal; the prediction matrix row is missing.
struct MissingSignal : std::runtime_error {
  explicit MissingSignal(std::size_t signal)
      : std::runtime_error("no reviewer reported signal " + std::to_string(signal)),
        signal(signal) {}
  std::size_t signal;
};

// A binary noise matrix outside the supported family (flipping or degenerate).
struct NotInFamily : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPositiveDeterminant : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularJoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace surpcal
