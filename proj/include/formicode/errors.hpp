#pragma once

#include <stdexcept>
#include <string>

namespace formicode {

// Raised for unreadable or unwritable files. CLI maps this to exit code 3;
// validation failures (std::invalid_argument, ConfigError, CsvError) map to 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CsvError : std::runtime_error {
  CsvError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

}  // namespace formicode
