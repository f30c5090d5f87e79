#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace weakkam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexError : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct ModelError : Error {
    using Error::Error;
};

// Legendre transform argmax landed on the sample boundary.
struct RangeError : Error {
    using Error::Error;
};

// Symmetry image of a stored kernel edge is not stored.
struct StructureError : Error {
    using Error::Error;
};

struct ResidualRecord {
    int iteration = 0;
    double sup_change = 0.0;  // sup-norm change of the normalized iterate
    double shift = 0.0;       // mean of Tu - u
    double c_running = 0.0;   // running critical-value estimate
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string& msg, std::vector<ResidualRecord> hist)
        : Error(msg), history(std::move(hist)) {}
    std::vector<ResidualRecord> history;
};

struct ConsistencyError : Error {
    ConsistencyError(const std::string& msg, double disc, double est)
        : Error(msg), c_disc(disc), c_est(est) {}
    double c_disc;
    double c_est;
};

}  // namespace weakkam
