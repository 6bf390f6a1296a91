#pragma once

#include <stdexcept>
#include <string>

namespace wealth {

// Two densities (or a density and a file) live on different grids.
class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is valid in shape but carries no information (zero norm, all-zero money).
class DegenerateInput : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Probability mass is leaking past x_max faster than the configured budget.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wealth
