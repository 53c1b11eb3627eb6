#pragma once

#include <stdexcept>

namespace nds {

/// No exact evaluation path exists for the requested value (q1 = 1, c != 0).
class NotExactlyComputable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Fourier series could not be truncated to the required accuracy.
class TruncationInsufficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nds
