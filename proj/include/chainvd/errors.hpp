#pragma once

#include <stdexcept>

namespace chainvd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct EmptyChain : Error { using Error::Error; };
struct InvalidWalk : Error { using Error::Error; };
struct TooLargeForOracle : Error { using Error::Error; };
struct InvalidArity : Error { using Error::Error; };
struct EmptySiteSet : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct OutOfHypercube : Error { using Error::Error; };
struct ComplexVertex : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct DuplicateId : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };

} // namespace chainvd
