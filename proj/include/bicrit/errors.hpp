#pragma once

#include <stdexcept>
#include <string>

namespace bicrit {

// Enumeration budget exceeded (oracles are exact and refuse silently degraded answers).
struct SizeCapError : std::runtime_error {
    explicit SizeCapError(const std::string& what) : std::runtime_error(what) {}
};

// Scheduler invoked on an instance shape it does not support.
struct UnsupportedModelError : std::runtime_error {
    explicit UnsupportedModelError(const std::string& what) : std::runtime_error(what) {}
};

// Ratio against an optimum of zero (empty or all-zero instance).
struct DegenerateInstanceError : std::runtime_error {
    explicit DegenerateInstanceError(const std::string& what) : std::runtime_error(what) {}
};

// Game solver ran out of refinement budget; carries the last certified gap.
struct ConvergenceError : std::runtime_error {
    double last_gap;
    ConvergenceError(const std::string& what, double gap)
        : std::runtime_error(what), last_gap(gap) {}
};

// Distance matrix failed the metric checks (symmetry, zero diagonal, triangle inequality).
struct NonMetricError : std::runtime_error {
    explicit NonMetricError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; message carries location context.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bicrit
