#pragma once

#include <stdexcept>
#include <string>

namespace gaugekit {

// Malformed or inconsistent input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A size limit was exceeded (closure caps, exhaustive-search limits).
class SizeError : public InputError {
public:
    using InputError::InputError;
};

// A mathematical property failed on otherwise well-formed input. The CLI
// maps this to exit code 1.
class PropertyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No sample point lies within the requested slack of a virtual point.
class LocatednessError : public PropertyError {
public:
    using PropertyError::PropertyError;
};

// Partial Cauchy data violates one of the hypotheses needed to extend it.
class HypothesisError : public PropertyError {
public:
    using PropertyError::PropertyError;
};

// Every target point is at clamped distance 1 from the evaluated point.
class TargetNotReachableError : public PropertyError {
public:
    using PropertyError::PropertyError;
};

// A Cauchy point of the target has no representative within the slack.
class CompletenessSlackError : public PropertyError {
public:
    using PropertyError::PropertyError;
};

}  // namespace gaugekit
