#include "partmine/error.hpp"

namespace partmine {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptySegment: return "EmptySegment";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kSampleTooLarge: return "SampleTooLarge";
    case ErrorCode::kEmptyTree: return "EmptyTree";
    case ErrorCode::kLeafWithoutData: return "LeafWithoutData";
    case ErrorCode::kEmptyUniverse: return "EmptyUniverse";
    case ErrorCode::kOutOfWindowEvent: return "OutOfWindowEvent";
  }
  return "Unknown";
}

}  // namespace partmine
