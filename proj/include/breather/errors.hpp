#pragma once

#include <stdexcept>
#include <string>

namespace breather {

// Base of all library errors. Each subclass maps onto one CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

// A perturbation-theory energy denominator vanished (or fell below the floor).
class ResonanceError : public Error {
 public:
  ResonanceError(std::string denominator, double value)
      : Error("resonance: denominator " + denominator + " = " + std::to_string(value) +
              " is below the resonance floor"),
        denominator_(std::move(denominator)),
        value_(value) {}

  const std::string& denominator() const noexcept { return denominator_; }
  double value() const noexcept { return value_; }

 private:
  std::string denominator_;
  double value_;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Another band interleaves the one being extracted.
class BandOverlapError : public Error {
 public:
  using Error::Error;
};

}  // namespace breather
