#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specsplit {

// Base of every error raised by the library. The CLI maps subclasses onto
// process exit codes (see tools/specsplit.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  ShapeError(const std::string& what, std::size_t expected, std::size_t got);
  std::size_t expected() const { return expected_; }
  std::size_t got() const { return got_; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, std::size_t index);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Richardson self-check of the reference solver did not meet its tolerance.
class ReferenceUnreliable : public Error {
 public:
  ReferenceUnreliable(double difference, double tolerance);
  double difference() const { return difference_; }

 private:
  double difference_;
};

class BlowupSuspected : public Error {
 public:
  BlowupSuspected(const std::string& reason, std::size_t step);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& what, std::string path);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace specsplit
