// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace setopt {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class ConeDefect { ZeroRow, NotPointed, NotSolid };

struct InvalidCone : std::invalid_argument {
    InvalidCone(ConeDefect d, const std::string& msg)
        : std::invalid_argument(msg), defect(d) {}
    ConeDefect defect;
};

/// A selection produced a NaN/Inf value or an unknown instance was requested.
struct EvaluationError : std::runtime_error {
    EvaluationError(int sel, const std::string& msg)
        : std::runtime_error(msg), selection(sel) {}
    int selection;
};

/// |P_x| exceeded the configured cap; carries the true product size.
struct CapExceeded : std::runtime_error {
    CapExceeded(std::size_t sz, const std::string& msg)
        : std::runtime_error(msg), size(sz) {}
    std::size_t size;
};

/// Min-norm-point solver failed to meet its optimality criterion.
struct SubproblemError : std::runtime_error {
    SubproblemError(double res, const std::string& msg)
        : std::runtime_error(msg), criterion_residual(res) {}
    double criterion_residual;
};

struct LineSearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotStationary : std::logic_error {
    using std::logic_error::logic_error;
};

struct UnsupportedDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace setopt
