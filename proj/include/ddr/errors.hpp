#pragma once

#include <stdexcept>
#include <string>

namespace ddr {

enum class ErrorCode {
  EmptyLibrary,
  InvalidIdentifier,
  DelimiterPosition,
  InvalidQuery,
  BadMagic,
  UnsupportedVersion,
  TruncatedFile,
  ChecksumMismatch,
  MalformedLine,
  EmptyCorpus,
  GeneratorTimeout,
  GeneratorHttpError,
  UnparseableResponse,
  BindError,
  IndexLoadError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ddr
