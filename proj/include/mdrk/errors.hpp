#pragma once

#include <stdexcept>
#include <string>

namespace mdrk {

// Inadmissible physical state (vacuum, negative pressure, ...).
class StateError : public std::runtime_error {
public:
  StateError(std::string what, std::string component, double value)
      : std::runtime_error(std::move(what)),
        component_(std::move(component)),
        value_(value) {}

  const std::string& component() const { return component_; }
  double value() const { return value_; }

private:
  std::string component_;
  double value_;
};

// Bad user configuration (unknown key, out-of-range value).
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// NaN/inf detected mid-run; carries the step at which it happened.
class NumericalFailure : public std::runtime_error {
public:
  NumericalFailure(std::string what, long step) : std::runtime_error(std::move(what)), step_(step) {}
  long step() const { return step_; }

private:
  long step_;
};

}  // namespace mdrk
