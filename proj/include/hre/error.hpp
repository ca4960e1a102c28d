#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hre {

enum class ErrorKind {
  // matrix construction
  NonSquare,
  NonPositiveEntry,
  NonUnitDiagonal,
  NonFiniteEntry,
  // numerics
  EigenNotConverged,
  SingularSystem,
  // HRE
  EmptyUnknownSet,
  EmptyReferenceSet,
  PartitionMismatch,
  InadmissibleSolution,
  // hierarchy
  KnownValuesWithEigenMethod,
  MixedWeightSpecification,
  InvalidModel,
  // documents
  SyntaxError,
  SchemaError,
  DimensionMismatch,
  UnknownLabel,
  ConflictingWeightSpec,
  HoleAtUnknownPair,
  KnownRatioConflict,
};

inline constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorKind::NonUnitDiagonal: return "NonUnitDiagonal";
    case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorKind::EigenNotConverged: return "EigenNotConverged";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::EmptyUnknownSet: return "EmptyUnknownSet";
    case ErrorKind::EmptyReferenceSet: return "EmptyReferenceSet";
    case ErrorKind::PartitionMismatch: return "PartitionMismatch";
    case ErrorKind::InadmissibleSolution: return "InadmissibleSolution";
    case ErrorKind::KnownValuesWithEigenMethod: return "KnownValuesWithEigenMethod";
    case ErrorKind::MixedWeightSpecification: return "MixedWeightSpecification";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::ConflictingWeightSpec: return "ConflictingWeightSpec";
    case ErrorKind::HoleAtUnknownPair: return "HoleAtUnknownPair";
    case ErrorKind::KnownRatioConflict: return "KnownRatioConflict";
  }
  return "Unknown";
}

/// Every failure raised by the library. `path` locates the offending item
/// (a matrix cell, a document path such as `criteria[2].matrix[0][3]`, or a
/// criterion id) and may be empty.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string path = {})
      : std::runtime_error(compose(kind, message, path)),
        kind_(kind),
        message_(std::move(message)),
        path_(std::move(path)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

  /// Mathematical infeasibility, as opposed to bad input.
  bool is_infeasibility() const noexcept {
    return kind_ == ErrorKind::InadmissibleSolution || kind_ == ErrorKind::SingularSystem ||
           kind_ == ErrorKind::EigenNotConverged;
  }

  /// Same error with `prefix` prepended to the path.
  Error within(std::string_view prefix) const {
    std::string p(prefix);
    if (!path_.empty()) {
      if (path_.front() != '[' && path_.front() != '.') p += '.';
      p += path_;
    }
    return Error(kind_, message_, std::move(p));
  }

 private:
  static std::string compose(ErrorKind kind, const std::string& message, const std::string& path) {
    std::string s(to_string(kind));
    if (!path.empty()) s += " at " + path;
    s += ": " + message;
    return s;
  }

  ErrorKind kind_;
  std::string message_;
  std::string path_;
};

}  // namespace hre
