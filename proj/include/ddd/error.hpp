#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ddd {

enum class ErrorKind {
  kEmptyClass,
  kEmptyDataset,
  kDimensionMismatch,
  kInvalidAlpha,
  kUnknownLabel,
  kMixedModes,
  kEmptyInput,
  kEmptyIntersection,
  kZeroVector,
  kInvalidGrid,
  kParseError,
  kDuplicateSampleId,
  kRaggedRow,
  kNonFiniteValue,
  kNegativeProbability,
  kRowSumOutOfTolerance,
  kIoError,
  kUsage,
  kInvalidConfig,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every library failure is reported as a ddd::Error carrying a kind, so
/// callers (the CLI in particular) can map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ddd
