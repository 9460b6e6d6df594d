#pragma once

#include <stdexcept>
#include <string>

namespace berkline {

// Every failure raised by the library carries a stable kind string.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define BERKLINE_ERROR(Name)                                         \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what = "") : Error(#Name, what) {} \
  };

BERKLINE_ERROR(CompositeModulus)
BERKLINE_ERROR(ParseError)
BERKLINE_ERROR(TypeIPoint)
BERKLINE_ERROR(DiskOutsideUnit)
BERKLINE_ERROR(EmptyInput)
BERKLINE_ERROR(DimensionMismatch)
BERKLINE_ERROR(NotLeafExtension)
BERKLINE_ERROR(RealLambda)
BERKLINE_ERROR(SpectrumTooLarge)
BERKLINE_ERROR(InvalidComb)
BERKLINE_ERROR(UnknownLetter)
BERKLINE_ERROR(InconsistentTail)
BERKLINE_ERROR(NotInFollowerSet)
BERKLINE_ERROR(NotInDirection)
BERKLINE_ERROR(InadmissibleWord)
BERKLINE_ERROR(ZeroVector)
BERKLINE_ERROR(SingularMatrix)
BERKLINE_ERROR(TooManyWords)
BERKLINE_ERROR(PoleInsideDisk)
BERKLINE_ERROR(NonIntegralExponent)
BERKLINE_ERROR(NotUpperTriangular)
BERKLINE_ERROR(PoleAtBoundaryPoint)
BERKLINE_ERROR(InsufficientData)
BERKLINE_ERROR(EmptyCylinder)
BERKLINE_ERROR(EmptyMeasure)

#undef BERKLINE_ERROR

}  // namespace berkline
