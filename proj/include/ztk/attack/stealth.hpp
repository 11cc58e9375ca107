#pragma once
#include <string>
#include <vector>

#include "ztk/sim/trajectory.hpp"

namespace ztk {

// Largest pointwise gap between the named columns of two same-grid runs over
// [t_lo, t_hi], with the time at which it occurs. Used to quantify how much an
// injection moves the visible outputs relative to an injection-free run.
struct DeviationReport {
    double max_abs_dev = 0.0;
    double t_at_max = 0.0;
    std::string col_at_max;
};

DeviationReport output_deviation(const Trajectory& a, const Trajectory& b,
                                 const std::vector<std::string>& cols,
                                 double t_lo, double t_hi);

// Ratio probe/covert, floored so a perfectly covert run does not divide by
// zero. Large values mean the covert injection hides far better than an
// equal-magnitude injection in an arbitrary direction.
double stealth_factor(const DeviationReport& probe, const DeviationReport& covert,
                      double eps = 1e-9);

}  // namespace ztk
