#pragma once

#include <stdexcept>
#include <string>

namespace gcw {

// Error taxonomy mirrored by the CLI exit codes.
enum class ErrorCode {
  Input = 2,      // malformed files, invalid complexes, bad arguments
  Rigidity = 3,   // operation requires a rigid complex
  Algorithm = 4,  // algorithm hypothesis failure (e.g. no fundamental domain found)
  Resource = 5,   // configurable bound exceeded
  Internal = 6,   // arithmetic/consistency bug; should never fire on valid input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ErrorCode::Input, what) {}
};

struct RigidityError : Error {
  explicit RigidityError(const std::string& what) : Error(ErrorCode::Rigidity, what) {}
};

struct AlgorithmError : Error {
  explicit AlgorithmError(const std::string& what) : Error(ErrorCode::Algorithm, what) {}
};

struct ResourceError : Error {
  explicit ResourceError(const std::string& what) : Error(ErrorCode::Resource, what) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

}  // namespace gcw
