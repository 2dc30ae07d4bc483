#include "coexplore/error.hpp"

namespace coexplore {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyTopic: return "EmptyTopic";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::FixtureMissing: return "FixtureMissing";
    case ErrorKind::ProviderError: return "ProviderError";
    case ErrorKind::UnparseableCompletion: return "UnparseableCompletion";
    case ErrorKind::RateLimited: return "RateLimited";
    case ErrorKind::NetworkError: return "NetworkError";
    case ErrorKind::MalformedResponse: return "MalformedResponse";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::MissingEmbedding: return "MissingEmbedding";
    case ErrorKind::NoCoveredWords: return "NoCoveredWords";
    case ErrorKind::UnknownEntity: return "UnknownEntity";
    case ErrorKind::CorruptState: return "CorruptState";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
  }
  return "Error";
}

}  // namespace coexplore
