#pragma once

#include <stdexcept>
#include <string>

namespace podrbf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PODRBF_DEFINE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(#Name ": " + what) {}        \
  }

PODRBF_DEFINE_ERROR(DimensionMismatch);
PODRBF_DEFINE_ERROR(TimeOutOfRange);
PODRBF_DEFINE_ERROR(InvalidProblem);
PODRBF_DEFINE_ERROR(InvalidArgument);
PODRBF_DEFINE_ERROR(StepSizeUnderflow);
PODRBF_DEFINE_ERROR(NonFiniteState);
PODRBF_DEFINE_ERROR(NumericalFailure);
PODRBF_DEFINE_ERROR(AllZeroSpectrum);
PODRBF_DEFINE_ERROR(NegativeRadius);
PODRBF_DEFINE_ERROR(DuplicateCenters);
PODRBF_DEFINE_ERROR(SingularGram);
PODRBF_DEFINE_ERROR(NonFiniteObjective);
PODRBF_DEFINE_ERROR(FormatError);
PODRBF_DEFINE_ERROR(ConfigError);

#undef PODRBF_DEFINE_ERROR

/// Integration failure for one sample of a snapshot build.
class SampleFailure : public Error {
 public:
  SampleFailure(std::size_t index, const std::string& what)
      : Error("sample " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace podrbf
