#pragma once

#include <stdexcept>
#include <string>

namespace rosa {

// Single exception type for the whole library, tagged with a coarse kind so
// the C boundary can map it onto an error code.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    Parse,      // malformed rational / JSON / coin spec
    Dimension,  // instance shape does not fit the operation
    Parameter,  // bad numeric parameter (epsilon <= 0, division by zero, ...)
    Size,       // enumeration guard exceeded
    Config,     // unknown mechanism / oracle, missing required option
    Io,         // file errors
  };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace rosa
