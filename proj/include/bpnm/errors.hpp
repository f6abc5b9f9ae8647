// Typed error hierarchy. Callers that need to map failures to exit codes or
// retry logic catch the concrete type; everything derives from bpnm::Error.
#pragma once

#include <stdexcept>
#include <string>

namespace bpnm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unknown basis index, out-of-range coefficient access.
struct IndexError : Error {
    using Error::Error;
};

// Requested operation exists but is not provided for these arguments
// (derivative order > 2, gradients of a Uniform prior, non-integer moment
// order for the squared-exponential relaxation, ...).
struct UnsupportedError : Error {
    using Error::Error;
};

// Parameter outside its documented range (projection level, schedule shape).
struct RangeError : Error {
    using Error::Error;
};

// A symmetric factorization failed even after the nugget; carries a crude
// reciprocal-condition estimate of the offending Gram matrix.
struct ConditioningError : Error {
    ConditioningError(const std::string& what, double rcond_estimate)
        : Error(what), rcond(rcond_estimate) {}
    double rcond;
};

// A nonlinear functional reached a linear-only code path.
struct LinearityError : Error {
    using Error::Error;
};

// Gradient requested through the active branch of the threshold map.
struct ThresholdGradientError : Error {
    using Error::Error;
};

// Evidence estimates compared across different information (A, a).
struct ComparisonError : Error {
    using Error::Error;
};

// Pipeline graph malformed (cycle, missing terminal, arity mismatch).
struct StructuralError : Error {
    using Error::Error;
};

// Pipeline execution mode cannot handle a node's input kind.
struct ModeError : Error {
    using Error::Error;
};

// Optimizer failed to converge; message carries the best iterate found.
struct OptimizationError : Error {
    using Error::Error;
};

// Sampler failure (ensemble died, weight underflow); carries the rung index.
struct SamplerError : Error {
    SamplerError(const std::string& what, int rung_index)
        : Error(what), rung(rung_index) {}
    int rung;
};

// Evidence unavailable because a rung's ensemble is unusable.
struct EvidenceError : Error {
    EvidenceError(const std::string& what, int rung_index)
        : Error(what), rung(rung_index) {}
    int rung;
};

// Configuration file failed schema or cross-field validation.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace bpnm
