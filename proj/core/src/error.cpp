#include "tropharm/error.hpp"

namespace tropharm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::UnknownLeaf: return "UnknownLeaf";
    case ErrorCode::NotCubic: return "NotCubic";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::BadRibbon: return "BadRibbon";
    case ErrorCode::SelfLoopEdge: return "SelfLoopEdge";
    case ErrorCode::Unbalanced: return "Unbalanced";
    case ErrorCode::InfiniteIntegral: return "InfiniteIntegral";
    case ErrorCode::NotPathOrLoop: return "NotPathOrLoop";
    case ErrorCode::NotALoop: return "NotALoop";
    case ErrorCode::ResiduesDontSumToZero: return "ResiduesDontSumToZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::TooFewLeaves: return "TooFewLeaves";
    case ErrorCode::UnsupportedDimensionForSvg: return "UnsupportedDimensionForSvg";
    case ErrorCode::NotTropical: return "NotTropical";
    case ErrorCode::BadBasis: return "BadBasis";
    case ErrorCode::NonPositiveResidues: return "NonPositiveResidues";
    case ErrorCode::EvaluationAtPuncture: return "EvaluationAtPuncture";
    case ErrorCode::MinimumDensityViolation: return "MinimumDensityViolation";
    case ErrorCode::EmptyAfterClipping: return "EmptyAfterClipping";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::NonIntegerResidues: return "NonIntegerResidues";
    case ErrorCode::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "InternalError";
}

}  // namespace tropharm
