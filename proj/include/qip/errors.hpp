// errors.hpp
// Exception types shared by all qip modules. The CLI maps these onto
// exit codes, so keep the hierarchy flat and the messages one-liners.

#pragma once

#include <stdexcept>
#include <string>

namespace qip {

// Base class for everything thrown by qip.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Dimension mismatch; message names the offending shapes.
struct ShapeError : Error {
    explicit ShapeError(const std::string& what) : Error(what) {}
};

// Matrix expected Hermitian but deviates beyond tolerance.
struct HermiticityError : Error {
    explicit HermiticityError(const std::string& what) : Error(what) {}
};

// Violated value-level invariant (normalization, trace, positivity,
// Bloch ball, unit axis, non-finite entries).
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// Operation needs bipartite dims metadata that the operator lacks.
struct MetadataError : Error {
    explicit MetadataError(const std::string& what) : Error(what) {}
};

// Operation defined only for specific subsystem dimensions.
struct UnsupportedDimensionError : Error {
    explicit UnsupportedDimensionError(const std::string& what) : Error(what) {}
};

// Forcing a measurement outcome whose probability is zero.
struct DegenerateBranchError : Error {
    explicit DegenerateBranchError(const std::string& what) : Error(what) {}
};

} // namespace qip
