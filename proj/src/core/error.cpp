#include "core/error.hpp"

namespace lrlogit {

const char* error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CardinalityTooLarge: return "CardinalityTooLarge";
    case ErrorKind::DegenerateCardinality: return "DegenerateCardinality";
    case ErrorKind::EmptyRange: return "EmptyRange";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace lrlogit
