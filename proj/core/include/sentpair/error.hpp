#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sentpair {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value (bad interval, zero capacity, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input text is not valid UTF-8.
class EncodingError : public Error {
 public:
  EncodingError(std::size_t byte_offset, const std::string& context);

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Malformed input file; line is 1-based, 0 when not applicable.
class InputError : public Error {
 public:
  InputError(std::string path, std::size_t line, const std::string& what);

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

// Output could not be written.
class OutputError : public Error {
 public:
  using Error::Error;
};

}  // namespace sentpair
