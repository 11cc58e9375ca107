#pragma once
#include <cstdint>
#include <functional>

#include <Eigen/Core>

#include "ztk/plant/four_tank.hpp"
#include "ztk/plant/pi_controller.hpp"

namespace ztk {

// Sampling box for the Lipschitz estimates. Lower bounds must keep the
// radicands away from zero or the square-root slopes blow up.
struct StateBox {
    V2 z_lo, z_hi;
    V2 x_lo, x_hi;
};

// Monte-Carlo surrogates for the gain conditions of the detection and
// recovery convergence arguments. They gate warnings only, never execution.
//   c5      max Lipschitz ratio over the model maps (H_n, F_n, G_n, Mff)
//   c7, c8  two-sided bounds of G_n^-1 (min/max singular value of a diagonal map)
//   c9      lower bound of F_n(., x_mid) in z
//   c4      gradient bound surrogate: 2 * max deviation from the box centre
//   c3      decay surrogate: slowest stable rate of the linearized attack-free
//           (x, c) loop at the box-centre operating point
struct AssumptionConstants {
    double c1 = 0.0, c2 = 0.0;  // bookkeeping only, nothing consumes them
    double c3 = 0.0, c4 = 0.0, c5 = 0.0;
    double c7 = 0.0, c8 = 0.0, c9 = 0.0;
    uint64_t seed = 0;
    int n_pairs = 0;
    bool detection_gain_warning = false;  // true iff c3 <= 6*c5*c4
    double lambda_max = 0.0;              // c4 / (c7*c9), adaptation-rate ceiling
};

AssumptionConstants estimate_constants(const NormalFormPlant& actual,
                                       const NormalFormPlant& nominal,
                                       const StateBox& box,
                                       int n_pairs = 100000,
                                       uint64_t seed = 20240817,
                                       const PIGains& gains = {});

// Pairwise-sampling two-sided Lipschitz estimate of an arbitrary map over a
// box: lo = min, hi = max of |f(p)-f(q)| / |p-q|. Reported with the seed so a
// quoted estimate can be reproduced exactly.
struct LipschitzRange {
    double lo, hi;
    uint64_t seed;
};
LipschitzRange mc_lipschitz_range(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
    int n_pairs = 100000, uint64_t seed = 20240817);

}  // namespace ztk
