#pragma once

#include <stdexcept>
#include <string>

namespace rootlab {

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct RefinementLimit : std::runtime_error {
    explicit RefinementLimit(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct GridMismatch : std::invalid_argument {
    explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct InsufficientData : std::invalid_argument {
    explicit InsufficientData(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rootlab
