#pragma once

#include <stdexcept>
#include <string>

namespace ergo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAPermutation : Error {
    using Error::Error;
};
struct WeightsNotPositive : Error {
    using Error::Error;
};
struct WeightsDontSumToOne : Error {
    using Error::Error;
};
struct CycleCountMismatch : Error {
    using Error::Error;
};
struct PointOutOfRange : Error {
    using Error::Error;
};
struct InvalidLambda : Error {
    using Error::Error;
};
struct WindowTooShort : Error {
    using Error::Error;
};
struct UnknownObservableForSystem : Error {
    using Error::Error;
};
struct TruncationOnSampledSystem : Error {
    using Error::Error;
};
struct InvalidSampledSystem : Error {
    using Error::Error;
};

// A membership-true position admitted no positive prefix sum within the
// horizon. Impossible for correctly built inputs; always a bug upstream.
struct InternalContradiction : Error {
    using Error::Error;
};

struct ConfigParse : Error {
    using Error::Error;
};
struct FileIO : Error {
    using Error::Error;
};

}  // namespace ergo
