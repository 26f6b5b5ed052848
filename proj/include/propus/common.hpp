#pragma once

#include <stdexcept>
#include <string>

namespace propus {

// Error categories map to CLI exit codes:
// std::invalid_argument -> 2 (usage), IoError -> 3, DataError -> 4.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace propus
