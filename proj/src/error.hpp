#pragma once

#include <stdexcept>
#include <string>

namespace emdalign {

// Error categories map one-to-one onto C API status codes.
enum class ErrorKind {
  kParse,
  kValidation,
  kConfig,
  kTraining,
  kSolver,
  kIo,
  kOutOfVocabulary,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define EMDALIGN_DEFINE_ERROR(Name, Kind)                         \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(Kind, what) {} \
  };

EMDALIGN_DEFINE_ERROR(ParseError, ErrorKind::kParse)
EMDALIGN_DEFINE_ERROR(ValidationError, ErrorKind::kValidation)
EMDALIGN_DEFINE_ERROR(ConfigError, ErrorKind::kConfig)
EMDALIGN_DEFINE_ERROR(TrainingError, ErrorKind::kTraining)
EMDALIGN_DEFINE_ERROR(SolverError, ErrorKind::kSolver)
EMDALIGN_DEFINE_ERROR(IoError, ErrorKind::kIo)

#undef EMDALIGN_DEFINE_ERROR

}  // namespace emdalign
