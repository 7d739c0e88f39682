#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace phaselift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Array/grid dimensions that do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument value (negative noise level, bad mask parameter, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A modulation shift does not generate the full frequency group.
class NotCoprimeError : public Error {
 public:
  using Error::Error;
};

/// The DFT vanishes at one or more frequencies, so phase chaining breaks.
class VanishingDftError : public Error {
 public:
  VanishingDftError(const std::string& what, std::vector<std::size_t> indices)
      : Error(what), indices_(std::move(indices)) {}
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

/// A scrambling mask has a zero weight and cannot be divided out.
class ZeroMaskWeightError : public Error {
 public:
  using Error::Error;
};

/// The iterative eigensolver failed to converge after retries.
class EigensolverError : public Error {
 public:
  using Error::Error;
};

/// Malformed or infeasible experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed image file.
class ImageFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace phaselift
