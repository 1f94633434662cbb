#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "parastab/basin.hpp"
#include "parastab/hill.hpp"
#include "parastab/params.hpp"

namespace parastab::cli {

struct TrajectoryOptions {
    std::string rhs = "full";  // full | origin | saddle
    double x0 = 0.1;
    double y0 = 0.0;
    double periods = 20;       // reference periods (full) or 2 pi units (linearized)
    double dt = 0.05;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    bool operator==(const TrajectoryOptions&) const = default;
};

struct TonguesOptions {
    int k_max = 3;
    double gamma_min = 0.0;
    double gamma_max = 0.1;
    std::size_t gamma_count = 21;
    std::size_t truncation = kDefaultTruncation;
    bool damped_overlay = false;  // adds the first damped tongue at the configured beta
    bool svg = false;
    bool operator==(const TonguesOptions&) const = default;
};

struct FloquetMapOptions {
    double gamma_min = 0.0;
    double gamma_max = 0.3;
    std::size_t gamma_count = 31;
    double delta_min = 0.05;
    double delta_max = 3.0;
    std::size_t delta_count = 60;
    bool operator==(const FloquetMapOptions&) const = default;
};

struct MelnikovOptions {
    double t0 = 0.0;
    bool quadrature = true;
    bool operator==(const MelnikovOptions&) const = default;
};

struct ThresholdsOptions {
    double gamma_min = 0.0;
    double gamma_max = 0.08;
    std::size_t gamma_count = 9;
    std::vector<double> omega_fs{0.85, 1.0, 1.15};
    bool operator==(const ThresholdsOptions&) const = default;
};

struct BasinOptions {
    double x_min = -1.0, x_max = 2.0;
    double y_min = -1.5, y_max = 1.5;
    std::size_t nx = 301, ny = 301;
    int horizon_periods = 32;
    double escape_x = kDefaultEscapeX;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    bool operator==(const BasinOptions&) const = default;

    BasinGridSpec grid() const;
    IntegratorSettings settings() const;
};

struct IntegrityOptions {
    double f_min = 0.0;
    double f_max = 0.2;
    std::size_t f_count = 41;
    std::vector<double> gammas{0.0, 0.05};
    double stop_below = -1.0;  // < 0 disables early stop
    bool svg = true;
    bool operator==(const IntegrityOptions&) const = default;
};

struct VerifyOptions {
    std::size_t truncation = kDefaultTruncation;
    std::size_t melnikov_samples = 100;
    bool operator==(const VerifyOptions&) const = default;
};

struct RunConfig {
    ParamValues params;
    std::string out = ".";
    unsigned workers = 0;
    unsigned long long seed = 0;  // reserved; all algorithms are deterministic

    TrajectoryOptions trajectory;
    TonguesOptions tongues;
    FloquetMapOptions floquet_map;
    MelnikovOptions melnikov;
    ThresholdsOptions thresholds;
    BasinOptions basin;
    IntegrityOptions integrity;
    VerifyOptions verify;

    bool operator==(const RunConfig&) const = default;
};

/// Thrown for malformed or inconsistent configuration (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses JSON text over `base`. Unknown keys are rejected.
RunConfig parse_config(const std::string& json_text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});
/// Pretty JSON with every key; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& c);

}  // namespace parastab::cli
