#pragma once

#include <stdexcept>

namespace cdphy {

/// Malformed input files and integrity violations in persisted data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two evaluation routes that must agree did not.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace cdphy
