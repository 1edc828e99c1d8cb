#include "ncdyn/error.hpp"

namespace ncdyn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TruncationLoss: return "TruncationLoss";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::InvalidList: return "InvalidList";
    case ErrorKind::DegenerateKernel: return "DegenerateKernel";
    case ErrorKind::NotSorted: return "NotSorted";
    case ErrorKind::NotCP: return "NotCP";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotProjection: return "NotProjection";
    case ErrorKind::NotCondPD: return "NotCondPD";
    case ErrorKind::AtZero: return "AtZero";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::OverlappingIntervals: return "OverlappingIntervals";
    case ErrorKind::AtomMismatch: return "AtomMismatch";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::SumMapSingular: return "SumMapSingular";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ncdyn
