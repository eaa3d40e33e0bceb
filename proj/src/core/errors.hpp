#ifndef PHASESTAR_CORE_ERRORS_HPP
#define PHASESTAR_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phasestar {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  DimensionTooSmall,
  TruncationTooCoarse,
  NonConvergence,
  DivergentTransform,
  InadmissibleTestFunction,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace phasestar

#endif
