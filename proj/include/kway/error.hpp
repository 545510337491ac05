#ifndef KWAY_ERROR_HPP
#define KWAY_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kway {

enum class ErrorKind {
  InvalidArgument,
  VertexOutOfRange,
  NonPositiveWeight,
  SelfLoop,
  DuplicateEdge,
  IsolatedVertex,
  EmptySet,
  TooLarge,
  ConvergenceFailure,
  ZeroFunction,
  DimensionMismatch,
  RetriesExhausted,
  InsufficientMass,
  SeparationViolated,
  MassTooSmall,
  EmptyGroup,
  Overlap,
  EmptyInput,
  DimensionTooLarge,
  DegenerateParameters,
  PipelineFailure,
  InputNotFound,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// All library failures surface as this exception; kind() is stable and is
// what the CLI reports in its structured error output.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kway

#endif  // KWAY_ERROR_HPP
