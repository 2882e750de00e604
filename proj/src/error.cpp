#include "sonet/error.hpp"

namespace sonet {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::UnknownTransition: return "UnknownTransition";
    case ErrorCode::UnknownPlace: return "UnknownPlace";
    case ErrorCode::NotAStep: return "NotAStep";
    case ErrorCode::StepNotEnabled: return "StepNotEnabled";
    case ErrorCode::NotAStepSequence: return "NotAStepSequence";
    case ErrorCode::NotWellFormed: return "NotWellFormed";
    case ErrorCode::TransitionNeverFires: return "TransitionNeverFires";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotACsoNet: return "NotACsoNet";
    case ErrorCode::NoDecomposition: return "NoDecomposition";
    case ErrorCode::UpperMarkingNotSingleton: return "UpperMarkingNotSingleton";
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptyPlaceSet: return "EmptyPlaceSet";
    case ViolationKind::DuplicateId: return "DuplicateId";
    case ViolationKind::NodeClash: return "NodeClash";
    case ViolationKind::CyclicFlow: return "CyclicFlow";
    case ViolationKind::TransitionWithoutPre: return "TransitionWithoutPre";
    case ViolationKind::TransitionWithoutPost: return "TransitionWithoutPost";
    case ViolationKind::DanglingArcEndpoint: return "DanglingArcEndpoint";
    case ViolationKind::InvalidArcDirection: return "InvalidArcDirection";
    case ViolationKind::ComponentInvalid: return "ComponentInvalid";
    case ViolationKind::ComponentNotWellFormed: return "ComponentNotWellFormed";
    case ViolationKind::NodeClashAcrossComponents: return "NodeClashAcrossComponents";
    case ViolationKind::BufferWithoutProducer: return "BufferWithoutProducer";
    case ViolationKind::BufferWithinOneComponent: return "BufferWithinOneComponent";
    case ViolationKind::LevelInvalid: return "LevelInvalid";
    case ViolationKind::ComponentCountMismatch: return "ComponentCountMismatch";
    case ViolationKind::UpperNotLineLike: return "UpperNotLineLike";
    case ViolationKind::BetaComponentMismatch: return "BetaComponentMismatch";
    case ViolationKind::BetaInitialMismatch: return "BetaInitialMismatch";
    case ViolationKind::BetaUnreachableBoundary: return "BetaUnreachableBoundary";
  }
  return "Unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string out = "net is invalid:";
  for (const auto& v : violations) out += std::string(" ") + to_string(v.kind) + " (" + v.message + ");";
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(ErrorCode::Validation, summarize(violations)), violations_(std::move(violations)) {}

}  // namespace sonet
