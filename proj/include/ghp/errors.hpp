/* Apache License, Version 2.0 */
#pragma once

#include <stdexcept>

namespace ghp {

// Search exceeded its node budget; caller should fall back to a bounded
// method or raise the limit.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ghp
