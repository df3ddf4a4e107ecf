#pragma once

#include <stdexcept>
#include <string>

namespace ggopt {

// Bitstream decoding failed: truncated payload, count mismatch, bad framing.
class CorruptStreamError : public std::runtime_error {
public:
    explicit CorruptStreamError(const std::string& what) : std::runtime_error(what) {}
};

// Training aborted: non-finite loss or loss blow-up past the divergence guard.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Distribution fitting could not invert the moment ratio inside the search bounds.
class EstimationError : public std::runtime_error {
public:
    EstimationError(const std::string& what, double clamped_bound)
        : std::runtime_error(what), clamped_bound(clamped_bound) {}
    double clamped_bound;
};

// Run configuration rejected before any compute.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ggopt
