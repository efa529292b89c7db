#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace levelcurv {

enum class ErrorKind {
  GradientTooSmall,
  DegenerateChart,
  NonpositiveCurvature,
  OutOfDomain,
  UnsupportedDimension,
  ExhaustedResampling,
  InvalidInstance,
  NotAMinimalJet,
  NoSolution,
  DidNotConverge,
  TooCloseToBoundary,
  HypothesisViolated,
  TooCoarse,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this type; `kind()`
/// lets callers separate numerical failures from violated hypotheses.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GradientTooSmall: return "GradientTooSmall";
    case ErrorKind::DegenerateChart: return "DegenerateChart";
    case ErrorKind::NonpositiveCurvature: return "NonpositiveCurvature";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::ExhaustedResampling: return "ExhaustedResampling";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::NotAMinimalJet: return "NotAMinimalJet";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::DidNotConverge: return "DidNotConverge";
    case ErrorKind::TooCloseToBoundary: return "TooCloseToBoundary";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::TooCoarse: return "TooCoarse";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace levelcurv
