#include "specsplit/errors.hpp"

#include <cstdio>

namespace specsplit {

namespace {
std::string with_number(const std::string& what, const char* label, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%s %.6g)", label, v);
  return what + buf;
}
}  // namespace

ShapeError::ShapeError(const std::string& what, std::size_t expected, std::size_t got)
    : Error(what + ": expected " + std::to_string(expected) + ", got " + std::to_string(got)),
      expected_(expected),
      got_(got) {}

NumericalFailure::NumericalFailure(const std::string& what, std::size_t index)
    : Error(what + " at index " + std::to_string(index)), index_(index) {}

ReferenceUnreliable::ReferenceUnreliable(double difference, double tolerance)
    : Error(with_number(with_number("reference self-check failed", "difference", difference),
                        "tolerance", tolerance)),
      difference_(difference) {}

BlowupSuspected::BlowupSuspected(const std::string& reason, std::size_t step)
    : Error("blow-up suspected at step " + std::to_string(step) + ": " + reason), step_(step) {}

IoError::IoError(const std::string& what, std::string path)
    : Error(what + ": " + path), path_(std::move(path)) {}

}  // namespace specsplit
