#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sonet {

enum class ErrorCode {
  UnknownNode,
  UnknownTransition,
  UnknownPlace,
  NotAStep,
  StepNotEnabled,
  NotAStepSequence,
  NotWellFormed,
  TransitionNeverFires,
  IndexOutOfRange,
  NotACsoNet,
  NoDecomposition,
  UpperMarkingNotSingleton,
  Validation,
  SyntaxError,
  UnknownKind,
  DuplicateId,
  SchemaError,
  BoundExceeded,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Base exception for every failure raised by the library. `nodes` names the
/// offending identifiers (missing places, shared pre-places, ...), `index` the
/// position in a sequence when one applies, and `reason` a short machine tag.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<std::string> nodes = {},
        std::optional<std::size_t> index = std::nullopt, std::string reason = {})
      : std::runtime_error(std::move(message)),
        code_(code),
        nodes_(std::move(nodes)),
        index_(index),
        reason_(std::move(reason)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  std::optional<std::size_t> index() const noexcept { return index_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  ErrorCode code_;
  std::vector<std::string> nodes_;
  std::optional<std::size_t> index_;
  std::string reason_;
};

enum class ViolationKind {
  EmptyPlaceSet,
  DuplicateId,
  NodeClash,
  CyclicFlow,
  TransitionWithoutPre,
  TransitionWithoutPost,
  DanglingArcEndpoint,
  InvalidArcDirection,
  // csa
  ComponentInvalid,
  ComponentNotWellFormed,
  NodeClashAcrossComponents,
  BufferWithoutProducer,
  BufferWithinOneComponent,
  // bsa
  LevelInvalid,
  ComponentCountMismatch,
  UpperNotLineLike,
  BetaComponentMismatch,
  BetaInitialMismatch,
  BetaUnreachableBoundary,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::string> nodes;
  std::string message;
};

/// Thrown by the validate_* entry points; carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace sonet
