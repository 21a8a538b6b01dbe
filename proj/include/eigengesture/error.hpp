#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eigengesture {

// Error families double as CLI exit codes.
enum class ErrorFamily : int {
  Config = 2,
  Data = 3,
  Numerical = 4,
  Io = 5,
};

enum class ErrorCode {
  // config
  BadConfig,
  BadTarget,
  CountOutOfRange,
  RankOutOfRange,
  UnknownRealisation,
  FrameOutOfRange,
  // data
  MalformedFile,
  TooShort,
  UnknownGesture,
  MissingRealisation,
  DuplicateRealisation,
  SlotOutOfRange,
  NotStudentised,
  EmptyInput,
  BadShape,
  // numerical
  NoConvergence,
  DegenerateSensor,
  DegenerateSpectrum,
  // io
  IoFailure,
};

std::string_view to_string(ErrorCode code);
ErrorFamily family_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }
  ErrorFamily family() const { return family_of(code_); }
  int exit_code() const { return static_cast<int>(family()); }

 private:
  ErrorCode code_;
};

}  // namespace eigengesture
