#pragma once

#include <stdexcept>
#include <string>

namespace ncsphere {

// One exception type per failure kind; kind() is what reports and the CLI print.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define NCSPHERE_ERROR(Name)                                              \
  struct Name : Error {                                                   \
    explicit Name(const std::string& what = "") : Error(#Name, what) {}   \
  }

NCSPHERE_ERROR(DivisionByZero);
NCSPHERE_ERROR(DenominatorVanishes);
NCSPHERE_ERROR(ContextMismatch);
NCSPHERE_ERROR(ShapeMismatch);
NCSPHERE_ERROR(NotSquare);
NCSPHERE_ERROR(IndexOutOfRange);
NCSPHERE_ERROR(DegreeCapExceeded);
NCSPHERE_ERROR(DegenerateSpectrum);
NCSPHERE_ERROR(DegenerateDiscriminant);
NCSPHERE_ERROR(DegenerateAtSpecialization);
NCSPHERE_ERROR(NonScalarTrace);
NCSPHERE_ERROR(SpecializationMismatch);
NCSPHERE_ERROR(UnknownPresentation);
NCSPHERE_ERROR(PatternMismatch);
NCSPHERE_ERROR(ParseError);
NCSPHERE_ERROR(IoError);

#undef NCSPHERE_ERROR

}  // namespace ncsphere
