#pragma once

#include <stdexcept>
#include <string>

namespace brickwall {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define BRICKWALL_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                          \
  public:                                                              \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

BRICKWALL_DEFINE_ERROR(OverlappingIntervals);
BRICKWALL_DEFINE_ERROR(EmptyBandSet);
BRICKWALL_DEFINE_ERROR(InvalidInterval);
BRICKWALL_DEFINE_ERROR(InvalidGrid);
BRICKWALL_DEFINE_ERROR(BandOutOfRange);
BRICKWALL_DEFINE_ERROR(ChannelTooNarrow);
BRICKWALL_DEFINE_ERROR(GridTooCoarse);
BRICKWALL_DEFINE_ERROR(InvalidArgument);
BRICKWALL_DEFINE_ERROR(InvalidStepPartition);
BRICKWALL_DEFINE_ERROR(NotIncreasing);
BRICKWALL_DEFINE_ERROR(NotPrimePower);
BRICKWALL_DEFINE_ERROR(BudgetExceeded);
BRICKWALL_DEFINE_ERROR(ConfigError);

#undef BRICKWALL_DEFINE_ERROR

}  // namespace brickwall
