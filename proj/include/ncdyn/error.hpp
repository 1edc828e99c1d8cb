#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncdyn {

enum class ErrorKind {
  NonHermitian,
  NonSquare,
  DimensionMismatch,
  LengthMismatch,
  TruncationLoss,
  NotNormalized,
  InvalidList,
  DegenerateKernel,
  NotSorted,
  NotCP,
  NotUnital,
  BudgetExceeded,
  NotProjection,
  NotCondPD,
  AtZero,
  BadSpec,
  BadGrid,
  OverlappingIntervals,
  AtomMismatch,
  SingularGram,
  SumMapSingular,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// All library failures surface as this type; the kind is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ncdyn
