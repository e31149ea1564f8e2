#ifndef WAVESIM_ERRORS_HPP
#define WAVESIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wavesim {

/// Invalid user-facing configuration (bad scenario file, bad CLI override).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A crack whose flexibility is exactly zero cannot produce a spring element.
struct NoCrackSignal : std::runtime_error {
  explicit NoCrackSignal(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical construction failure (singular transform, failed factorization).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wavesim

#endif  // WAVESIM_ERRORS_HPP
