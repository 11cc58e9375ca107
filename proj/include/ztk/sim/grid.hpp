#pragma once
#include <cmath>
#include <cstdint>

#include "ztk/sim/errors.hpp"

namespace ztk {

// Fixed-step time grid. t_end == t0 is allowed and yields a single sample.
struct TimeGrid {
    double t0 = 0.0;
    double t_end = 0.0;
    double dt = 0.01;

    TimeGrid() = default;
    TimeGrid(double t0_, double t_end_, double dt_) : t0(t0_), t_end(t_end_), dt(dt_) {
        if (!(dt > 0.0)) throw ConfigError("grid: dt must be > 0");
        if (t_end < t0) throw ConfigError("grid: t_end must be >= t0");
        double q = (t_end - t0) / dt;
        double r = std::round(q);
        // horizon must be an integer number of steps (up to fp rounding)
        if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)))
            throw ConfigError("grid: (t_end - t0)/dt is not an integer step count");
    }

    int64_t n_steps() const { return static_cast<int64_t>(std::llround((t_end - t0) / dt)); }
    int64_t n_samples() const { return n_steps() + 1; }
    double t(int64_t k) const { return t0 + static_cast<double>(k) * dt; }
};

}  // namespace ztk
