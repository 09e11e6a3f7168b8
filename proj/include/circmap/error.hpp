#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circmap {

enum class Errc {
  InvalidInput,
  InvalidCurve,
  PointOnCurve,
  NonIntegerResidual,
  NestedCurves,
  IntersectingCurves,
  ZeroInDomain,
  ArcSearchFailed,
  EmptySet,
  OutOfDomain,
  UnderResolved,
  DegenerateLeadingCoefficient,
  MapperDiverged,
  TooCloseToBoundary,
  DiskNotContained,
  MissingDerivatives,
  ContractionStalled,
  OffsetContourFailed,
  GridGenerationFailed,
  PatchesOverlap,
  BoundaryValueNotZero,
  CurveCollision,
  BudgetExceeded,
  ModulusBoundFailed,
  RadiusConditionViolated,
  RecursionFailed,
  DegenerateFit,
  InverseEvaluationFailed,
  CertifyUnavailable,
  MissingArtifacts,
};

std::string_view to_string(Errc code);

/// Library-wide exception. `what()` reads "<module>: <message>".
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string_view module, const std::string& message)
      : std::runtime_error(std::string(module) + ": " + message),
        code_(code),
        module_(module) {}

  Errc code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  Errc code_;
  std::string module_;
};

}  // namespace circmap
