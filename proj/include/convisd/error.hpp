#ifndef CONVISD_ERROR_HPP
#define CONVISD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace convisd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CONVISD_DEFINE_ERROR(Name)                              \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(what) {}     \
  };

CONVISD_DEFINE_ERROR(InvalidField)
CONVISD_DEFINE_ERROR(DimensionMismatch)
CONVISD_DEFINE_ERROR(IndexOutOfRange)
CONVISD_DEFINE_ERROR(SizeMismatch)
CONVISD_DEFINE_ERROR(RankDeficient)
CONVISD_DEFINE_ERROR(NotSquare)
CONVISD_DEFINE_ERROR(NotLeftPrime)
CONVISD_DEFINE_ERROR(NoParityCheck)
CONVISD_DEFINE_ERROR(TooLarge)
CONVISD_DEFINE_ERROR(WeightTooLarge)
CONVISD_DEFINE_ERROR(NonPositiveInput)
CONVISD_DEFINE_ERROR(InconsistentSpec)
CONVISD_DEFINE_ERROR(NotInCode)
CONVISD_DEFINE_ERROR(NotDelayFree)
CONVISD_DEFINE_ERROR(FormatError)

#undef CONVISD_DEFINE_ERROR

}  // namespace convisd

#endif
