#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmsr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON, GraphML, demand files, SID strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input that parsed but violates a model invariant. Carries one
/// diagnostic per violation.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> diagnostics)
      : Error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<std::string>& diagnostics() const noexcept {
    return diagnostics_;
  }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += "; ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> diagnostics_;
};

/// Invalid SID numbering or demand configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An enumeration exceeded its configured cap.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// The forwarding simulator hit a malformed SR path or its loop guard.
class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmsr
