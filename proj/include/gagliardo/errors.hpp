#pragma once

#include <stdexcept>
#include <string>

namespace gagliardo {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// validation errors exit 2, numerical errors exit 3, I/O errors exit 4.
enum class ErrorClass { Validation, Numerical, Io };

class Error : public std::runtime_error {
 public:
  Error(std::string kind, ErrorClass cls, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)), class_(cls) {}
  const std::string& kind() const { return kind_; }
  ErrorClass error_class() const { return class_; }

 private:
  std::string kind_;
  ErrorClass class_;
};

#define GAGLIARDO_ERROR_TYPE(NAME, CLASS)                          \
  class NAME : public Error {                                      \
   public:                                                         \
    explicit NAME(const std::string& msg)                          \
        : Error(#NAME, ErrorClass::CLASS, msg) {}                  \
  };

GAGLIARDO_ERROR_TYPE(InvalidConfiguration, Validation)
GAGLIARDO_ERROR_TYPE(InvalidInterval, Validation)
GAGLIARDO_ERROR_TYPE(SingularArgument, Validation)
GAGLIARDO_ERROR_TYPE(InvalidRadius, Validation)
GAGLIARDO_ERROR_TYPE(WrongRegime, Validation)
GAGLIARDO_ERROR_TYPE(NotOverlapping, Validation)
GAGLIARDO_ERROR_TYPE(DivergentEnergy, Numerical)
GAGLIARDO_ERROR_TYPE(CuspPoint, Numerical)
GAGLIARDO_ERROR_TYPE(StalledDescent, Numerical)
GAGLIARDO_ERROR_TYPE(CuspEncountered, Numerical)
GAGLIARDO_ERROR_TYPE(IOError, Io)

#undef GAGLIARDO_ERROR_TYPE

}  // namespace gagliardo
