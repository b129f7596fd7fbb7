#pragma once

#include <stdexcept>
#include <string>

namespace harmext {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateCurve : Error {
    explicit DegenerateCurve(const std::string& msg) : Error(msg) {}
};

struct SelfIntersectingCurve : Error {
    explicit SelfIntersectingCurve(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroJet : Error {
    explicit DivisionByZeroJet(const std::string& msg) : Error(msg) {}
};

struct InsufficientOrder : Error {
    explicit InsufficientOrder(const std::string& msg) : Error(msg) {}
};

struct GridOnlyData : Error {
    explicit GridOnlyData(const std::string& msg) : Error(msg) {}
};

struct OpenCurveUnsupported : Error {
    explicit OpenCurveUnsupported(const std::string& msg) : Error(msg) {}
};

struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& msg) : Error(msg) {}
};

struct InversionFailure : Error {
    explicit InversionFailure(const std::string& msg) : Error(msg) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

struct StageError : Error {
    StageError(const std::string& stage, const std::string& msg)
        : Error("[" + stage + "] " + msg), stage_name(stage) {}
    std::string stage_name;
};

}  // namespace harmext
