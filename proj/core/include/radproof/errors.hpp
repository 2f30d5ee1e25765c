#pragma once

#include <stdexcept>
#include <string>

namespace radproof {

/// Base class of every failure raised by the library. `kind()` names the
/// failure mode in a stable, machine-readable way.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)), detail_(what) {}
  const std::string& kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  std::string kind_;
  std::string detail_;
};

#define RADPROOF_ERROR(Name)                                                   \
  struct Name : Error {                                                        \
    explicit Name(const std::string& what) : Error(#Name, what) {}             \
  }

RADPROOF_ERROR(InvalidInterval);
RADPROOF_ERROR(DivisionByZeroInterval);
RADPROOF_ERROR(DomainError);
RADPROOF_ERROR(SingularEnclosure);
RADPROOF_ERROR(NuMismatch);
RADPROOF_ERROR(ArityMismatch);
RADPROOF_ERROR(ContractionFailed);
RADPROOF_ERROR(EigenvalueOnImaginaryAxis);
RADPROOF_ERROR(MultipleEigenvalue);
RADPROOF_ERROR(NoAdmissibleLy);
RADPROOF_ERROR(NewtonDiverged);
RADPROOF_ERROR(SingularTruncatedJacobian);
RADPROOF_ERROR(NegativeDiscriminant);
RADPROOF_ERROR(Constraint45bFailed);
RADPROOF_ERROR(RhoExceedsVarrho);
RADPROOF_ERROR(NoSignChange);
RADPROOF_ERROR(InterpolationIllConditioned);
RADPROOF_ERROR(ConfigError);
RADPROOF_ERROR(ManifoldCheckFailed);
RADPROOF_ERROR(SymmetryViolated);

#undef RADPROOF_ERROR

/// A failure raised inside one pipeline stage, tagged with that stage.
class StageError : public Error {
public:
  StageError(std::string stage, const Error& inner)
      : Error(inner.kind(), "[" + stage + "] " + inner.detail()), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

}  // namespace radproof
