#pragma once

#include <stdexcept>
#include <string>

namespace npi {

/// Bad or inconsistent input data (malformed CSV, invariant violations).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested computation exceeds a configured resource limit
/// (e.g. exact enumeration above the ordering cap).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace npi
