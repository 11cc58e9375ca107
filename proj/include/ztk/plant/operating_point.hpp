#pragma once
#include "ztk/plant/four_tank.hpp"
#include "ztk/plant/pi_controller.hpp"

namespace ztk {

// Attack-free steady state of both loops for a given output reference.
// x_star equals the reference (integral action); z_star / z_star_n are the
// internal coordinates of the actual plant and of the nominal replica.
struct OperatingPoint {
    V2 x_star;
    V2 z_star;
    V2 z_star_n;
    V2 u_c_star;
    V2 u_mc_star;   // replica controller's steady output (nominal balance)
    V2 c_star;      // integrator states that realize the steady inputs
    V2 c_star_n;
};

struct SolveOptions {
    double horizon = 5000.0;  // s of relaxation before giving up
    double dt = 0.01;
    double tol = 1e-8;        // max |state derivative| that counts as settled
    double window = 10.0;     // s the derivative bound must hold
};

// Closed-form balance seed, then relaxation of the attack-free closed loop
// until the derivative stays below tol over a full window (NoConvergence on
// horizon exhaustion), then a Newton solve of the equilibrium equations as an
// independent cross-check (SolveError on disagreement).
OperatingPoint solve_operating_point(const NormalFormPlant& actual,
                                     const NormalFormPlant& nominal,
                                     const PIController& ctrl_actual,
                                     const PIController& ctrl_nominal,
                                     const V2& y_ref,
                                     const SolveOptions& opt = {});

}  // namespace ztk
