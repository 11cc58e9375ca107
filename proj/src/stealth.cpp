#include "ztk/attack/stealth.hpp"

#include <algorithm>
#include <cmath>

namespace ztk {

DeviationReport output_deviation(const Trajectory& a, const Trajectory& b,
                                 const std::vector<std::string>& cols,
                                 double t_lo, double t_hi) {
    Trajectory::require_same_grid(a, b);
    if (cols.empty()) throw ConfigError("deviation: need at least one column");

    const std::vector<double>& ta = a.col(0);
    DeviationReport rep;
    for (const std::string& name : cols) {
        const std::vector<double>& ca = a.col(name);
        const std::vector<double>& cb = b.col(name);
        for (int64_t k = 0; k < a.samples(); ++k) {
            const double t = ta[static_cast<size_t>(k)];
            if (t < t_lo - 1e-12 || t > t_hi + 1e-12) continue;
            const double d = std::abs(ca[static_cast<size_t>(k)] - cb[static_cast<size_t>(k)]);
            if (d > rep.max_abs_dev) {
                rep.max_abs_dev = d;
                rep.t_at_max = t;
                rep.col_at_max = name;
            }
        }
    }
    return rep;
}

double stealth_factor(const DeviationReport& probe, const DeviationReport& covert,
                      double eps) {
    if (!(eps > 0.0)) throw ConfigError("stealth: eps must be > 0");
    return probe.max_abs_dev / std::max(covert.max_abs_dev, eps);
}

}  // namespace ztk
