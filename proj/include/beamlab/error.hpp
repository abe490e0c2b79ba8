#ifndef BEAMLAB_ERROR_HPP
#define BEAMLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace beamlab {

enum class ErrorCode {
  argument, // bad parameter or input value
  config,   // invalid configuration (file or key/value)
  numeric,  // numerical failure (non-convergence, NaN, singular system)
  io        // file system failure
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

} // namespace beamlab

#endif
