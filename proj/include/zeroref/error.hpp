#pragma once

#include <stdexcept>
#include <string>

namespace zeroref {

// Malformed or inconsistent input data (corpora, lexica, model files).
// Messages carry line numbers and field paths where available.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zeroref
