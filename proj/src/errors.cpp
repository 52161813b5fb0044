#include "ddr/errors.hpp"

namespace ddr {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyLibrary: return "EmptyLibrary";
    case ErrorCode::InvalidIdentifier: return "InvalidIdentifier";
    case ErrorCode::DelimiterPosition: return "DelimiterPosition";
    case ErrorCode::InvalidQuery: return "InvalidQuery";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::GeneratorTimeout: return "GeneratorTimeout";
    case ErrorCode::GeneratorHttpError: return "GeneratorHttpError";
    case ErrorCode::UnparseableResponse: return "UnparseableResponse";
    case ErrorCode::BindError: return "BindError";
    case ErrorCode::IndexLoadError: return "IndexLoadError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace ddr
