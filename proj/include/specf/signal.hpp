#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace specf {

/// Real-valued vector indexed by node id. Raw, filtered and abnormality
/// signals all use this shape.
struct Signal {
    std::vector<double> values;

    Signal() = default;
    explicit Signal(std::vector<double> v) : values(std::move(v)) {}

    static Signal zeros(std::size_t n) { return Signal(std::vector<double>(n, 0.0)); }

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
};

inline bool all_finite(const Signal& s) {
    for (double v : s.values)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace specf
