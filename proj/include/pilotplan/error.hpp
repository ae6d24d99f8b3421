// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pilotplan {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Pilot length outside {K, K+2, ..., LK/3} or wrong parity.
struct InvalidLength : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Partition depth outside the valid range of the grid.
struct DepthError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// A pilot shared by a single cell has unbounded asymptotic rate.
struct MonopolyError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace pilotplan
