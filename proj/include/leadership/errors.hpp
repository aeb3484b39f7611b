#pragma once

#include <stdexcept>
#include <string>

namespace leadership {

// Invalid configuration or arguments are reported with std::invalid_argument.
// The types below cover the remaining failure classes the tools map to exit codes.

/// Simulation produced a non-finite state.
class NumericFailure : public std::runtime_error {
  public:
    NumericFailure(const std::string& what, std::size_t frame)
        : std::runtime_error(what), frame_(frame) {}
    std::size_t frame() const noexcept { return frame_; }

  private:
    std::size_t frame_;
};

/// A series is too short for the requested embedding or window.
class InsufficientData : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two inputs describe different agent sets or lengths.
class InputMismatch : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace leadership
