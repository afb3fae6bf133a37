#include "iet/iet.hpp"

namespace iet {

const char* to_string(KeaneStatus status) {
  switch (status) {
    case KeaneStatus::violated: return "violated";
    case KeaneStatus::suspected: return "suspected";
    case KeaneStatus::no_violation_up_to_horizon: return "no-violation-up-to-horizon";
  }
  return "unknown";
}

template class BasicIet<double>;
template class BasicIet<Rational>;
template class BasicIet<HighPrecision>;

}  // namespace iet
