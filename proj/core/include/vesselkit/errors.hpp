#pragma once

#include <stdexcept>
#include <string>

namespace vesselkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing file, unreadable or unwritable destination.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Unsupported file format or corrupt contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Input decoded fine but is the wrong kind of raster for the operation.
class TypeMismatchError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or option value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace vesselkit
