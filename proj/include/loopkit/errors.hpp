#pragma once

#include <stdexcept>
#include <string>

namespace loopkit {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument values or ranges.
class ParamError : public Error {
public:
    explicit ParamError(const std::string& msg) : Error(msg) {}
};

// Tensor dimension mismatches.
class ShapeError : public ParamError {
public:
    explicit ShapeError(const std::string& msg) : ParamError(msg) {}
};

// Malformed records, scripts, or annotation data.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Ring length not tileable by the requested window/overlap. Carries the
// two nearest frame counts that would tile.
class PlanningError : public Error {
public:
    PlanningError(const std::string& msg, int nearest_lower, int nearest_upper)
        : Error(msg), nearest_lower(nearest_lower), nearest_upper(nearest_upper) {}

    int nearest_lower;
    int nearest_upper;
};

// A denoiser implementation broke its interface contract.
class ContractError : public Error {
public:
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

// File system / serialization failures.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace loopkit
