#pragma once

#include <stdexcept>
#include <string>

namespace heis {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text (group literal, form file, ...) could not be parsed or validated.
struct ParseError : Error {
    using Error::Error;
};

// An exhaustive operation was requested on a structure larger than the
// configured budget (see exhaustive_bound() in group.hpp).
struct BoundExceeded : Error {
    using Error::Error;
};

}  // namespace heis
