#include "kway/error.hpp"

namespace kway {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::IsolatedVertex: return "IsolatedVertex";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::InsufficientMass: return "InsufficientMass";
    case ErrorKind::SeparationViolated: return "SeparationViolated";
    case ErrorKind::MassTooSmall: return "MassTooSmall";
    case ErrorKind::EmptyGroup: return "EmptyGroup";
    case ErrorKind::Overlap: return "Overlap";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::DegenerateParameters: return "DegenerateParameters";
    case ErrorKind::PipelineFailure: return "PipelineFailure";
    case ErrorKind::InputNotFound: return "InputNotFound";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace kway
