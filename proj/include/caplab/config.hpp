#pragma once

#include <cstddef>
#include <string>

#include "caplab/conformal_domain.hpp"

namespace caplab {

struct Resolutions {
    int rings = 128;
    std::size_t sl_grid = 2048;
    int n_r = 256;
    int n_theta = 256;
};

struct Tolerances {
    double residual_V = 0.0;  // 0 means 1e-6 sqrt(M)
};

struct SweepSettings {
    int steps = 10;
    double amplitude = 1.0;
};

/// Accepts either a bare domain document
///   {"coefficients": [[re, im], ...], "n_r": ..., "n_theta": ...}
/// or a verification document
///   {"domain": {...}, "resolutions": {...}, "tolerances": {...}}.
/// Domains may also carry "shift": [re, im] and "metric": "sphere" | "plane".
struct RunConfig {
    AnalyticMap map;
    Resolutions resolutions;
    Tolerances tolerances;
    SweepSettings sweep;
};

/// Throws ConfigError on malformed input.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Multiplies every resolution by `factor` (rounded, with sane minimums).
RunConfig scale_resolutions(const RunConfig& config, double factor);

ConformalDomain make_domain(const RunConfig& config);

}  // namespace caplab
