#pragma once

#include <stdexcept>
#include <string>

namespace stdenoise {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched widths, heights, lengths, or buffer sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported input data (PGM headers, maxval, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Frame directory problems: missing frames, empty directory.
class SequenceError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failures while reading or writing.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace stdenoise
