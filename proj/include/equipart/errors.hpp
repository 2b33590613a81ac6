#pragma once

#include <stdexcept>
#include <string>

namespace equipart {

// Base type for every failure raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Inputs whose dimensions do not agree (point vs. hyperplane, measure vs. fan, ...).
struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// A measure with no mass where positive total mass is required.
struct ZeroMassError : Error {
    explicit ZeroMassError(const std::string& what) : Error(what) {}
};

// Malformed construction arguments or input files (JSON, grids, configs).
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// Requested frame length exceeds what the ambient dimension supports.
struct FrameTooLong : Error {
    explicit FrameTooLong(const std::string& what) : Error(what) {}
};

// Vectors handed to the complex-independence extractor are not independent over R.
struct NotIndependentError : Error {
    explicit NotIndependentError(const std::string& what) : Error(what) {}
};

// The map handed to the antipodal zero search failed the oddness spot-check.
struct NotOddError : Error {
    explicit NotOddError(const std::string& what) : Error(what) {}
};

// The map handed to an equivariant search failed its equivariance spot-check.
struct NotEquivariantError : Error {
    explicit NotEquivariantError(const std::string& what) : Error(what) {}
};

// The number of scalar constraints exceeds what the search sphere can carry.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

// Requested family size outside the provable bounds; message names the bound.
struct KTooLarge : Error {
    explicit KTooLarge(const std::string& what) : Error(what) {}
};

// Every restart of a coincidence search was attracted to the degenerate locus.
struct DegenerateRegion : Error {
    explicit DegenerateRegion(const std::string& what) : Error(what) {}
};

// Ambient dimension below what a construction requires.
struct DimensionTooSmall : Error {
    explicit DimensionTooSmall(const std::string& what) : Error(what) {}
};

}  // namespace equipart
