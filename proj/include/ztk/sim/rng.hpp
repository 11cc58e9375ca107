#pragma once
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace ztk {

// Deterministic Gaussian source. Box-Muller on raw mt19937_64 output (no
// std::*_distribution, whose sequences are implementation-defined). Exactly
// two engine draws per pair, so consumption per grid step is fixed and runs
// with the same seed stay sample-aligned no matter which switches are on.
class GaussianRng {
public:
    explicit GaussianRng(uint64_t seed) : eng_(seed) {}

    std::pair<double, double> normal_pair() {
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;          // [0,1)
        const double rho = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        return {rho * std::cos(th), rho * std::sin(th)};
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace ztk
