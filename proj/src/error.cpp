#include "eigengesture/error.hpp"

namespace eigengesture {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::BadTarget: return "BadTarget";
    case ErrorCode::CountOutOfRange: return "CountOutOfRange";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::UnknownRealisation: return "UnknownRealisation";
    case ErrorCode::FrameOutOfRange: return "FrameOutOfRange";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::UnknownGesture: return "UnknownGesture";
    case ErrorCode::MissingRealisation: return "MissingRealisation";
    case ErrorCode::DuplicateRealisation: return "DuplicateRealisation";
    case ErrorCode::SlotOutOfRange: return "SlotOutOfRange";
    case ErrorCode::NotStudentised: return "NotStudentised";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateSensor: return "DegenerateSensor";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

ErrorFamily family_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadConfig:
    case ErrorCode::BadTarget:
    case ErrorCode::CountOutOfRange:
    case ErrorCode::RankOutOfRange:
    case ErrorCode::UnknownRealisation:
    case ErrorCode::FrameOutOfRange:
      return ErrorFamily::Config;
    case ErrorCode::MalformedFile:
    case ErrorCode::TooShort:
    case ErrorCode::UnknownGesture:
    case ErrorCode::MissingRealisation:
    case ErrorCode::DuplicateRealisation:
    case ErrorCode::SlotOutOfRange:
    case ErrorCode::NotStudentised:
    case ErrorCode::EmptyInput:
    case ErrorCode::BadShape:
      return ErrorFamily::Data;
    case ErrorCode::NoConvergence:
    case ErrorCode::DegenerateSensor:
    case ErrorCode::DegenerateSpectrum:
      return ErrorFamily::Numerical;
    case ErrorCode::IoFailure:
      return ErrorFamily::Io;
  }
  return ErrorFamily::Data;
}

}  // namespace eigengesture
