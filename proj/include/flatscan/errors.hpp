#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatscan {

enum class ErrorKind {
  NonClosedPolygon,
  GluingMismatch,
  Disconnected,
  BadConeAngle,
  IrrationalAngle,
  NonSimplePolygon,
  NotUnimodular,
  RadiusTooLarge,
  DegenerateTriangle,
  NotPeriodicDirection,
  ParallelInput,
  SegmentHitsSingularity,
  EmptyScan,
  ThresholdNotMet,
  VerticalDegenerate,
  ZeroVector,
  InvalidParameter,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonClosedPolygon: return "NonClosedPolygon";
    case ErrorKind::GluingMismatch: return "GluingMismatch";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::BadConeAngle: return "BadConeAngle";
    case ErrorKind::IrrationalAngle: return "IrrationalAngle";
    case ErrorKind::NonSimplePolygon: return "NonSimplePolygon";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::NotPeriodicDirection: return "NotPeriodicDirection";
    case ErrorKind::ParallelInput: return "ParallelInput";
    case ErrorKind::SegmentHitsSingularity: return "SegmentHitsSingularity";
    case ErrorKind::EmptyScan: return "EmptyScan";
    case ErrorKind::ThresholdNotMet: return "ThresholdNotMet";
    case ErrorKind::VerticalDegenerate: return "VerticalDegenerate";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every error raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace flatscan
