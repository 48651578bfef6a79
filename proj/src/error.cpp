#include "ddd/error.hpp"

namespace ddd {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyClass: return "EmptyClass";
    case ErrorKind::kEmptyDataset: return "EmptyDataset";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kInvalidAlpha: return "InvalidAlpha";
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kMixedModes: return "MixedModes";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kEmptyIntersection: return "EmptyIntersection";
    case ErrorKind::kZeroVector: return "ZeroVector";
    case ErrorKind::kInvalidGrid: return "InvalidGrid";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kDuplicateSampleId: return "DuplicateSampleId";
    case ErrorKind::kRaggedRow: return "RaggedRow";
    case ErrorKind::kNonFiniteValue: return "NonFiniteValue";
    case ErrorKind::kNegativeProbability: return "NegativeProbability";
    case ErrorKind::kRowSumOutOfTolerance: return "RowSumOutOfTolerance";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kUsage: return "UsageError";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
      kind_(kind) {}

}  // namespace ddd
